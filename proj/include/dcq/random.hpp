#pragma once

// Seeded generators for random operators and states. Every draw goes through
// an explicit engine so runs are reproducible.

#include <cstdint>
#include <random>
#include <vector>

#include "dcq/linalg.hpp"

namespace dcq {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(Rng& rng);
double gaussian(Rng& rng);
Complex complex_gaussian(Rng& rng);

CMatrix random_complex_matrix(Rng& rng, Index rows, Index cols);
CVector random_complex_vector(Rng& rng, Index dim);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
CMatrix random_unitary(Rng& rng, Index n);
CMatrix random_hermitian(Rng& rng, Index n, double scale = 1.0);

/// Unitary with prescribed (possibly repeated) eigenphases in a random basis.
CMatrix unitary_with_phases(Rng& rng, const std::vector<double>& phases);

/// (I + iεJ)U with U Haar and J a random Hermitian.
DCMatrix random_dual_unitary(Rng& rng, Index n, double inf_scale = 1.0);
DCMatrix random_dual_hermitian(Rng& rng, Index n, double scale = 1.0);

/// Random appreciable vector normalized to unit dual norm.
DCVector random_unit_vector(Rng& rng, Index dim);

/// A complete dual-complex measurement with k outcomes on dimension d, read
/// off the first block-column of a random dual unitary of size kd.
std::vector<DCMatrix> random_measurement_family(Rng& rng, Index k, Index d);

}  // namespace dcq

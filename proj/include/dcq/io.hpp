#pragma once

// JSON and CSV encodings for scalars, operators, states, measurements,
// walk trajectories and covariance reports.
//
// Scalars are [re_sig, im_sig, re_inf, im_inf]. Matrices are
// {"rows": n, "cols": m, "entries": [...]} in row-major order, and files add a
// top-level "kind" tag. Finite doubles round-trip bit-exactly.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcq/linalg.hpp"
#include "dcq/walk.hpp"

namespace dcq::io {

using nlohmann::json;

json to_json(const DualComplex& w);
DualComplex scalar_from_json(const json& j);

json to_json(const DCMatrix& m);
json to_json(const CMatrix& m);
DCMatrix matrix_from_json(const json& j);
/// Rejects a nonzero infinitesimal part.
CMatrix complex_matrix_from_json(const json& j);

/// {"kind": "state"} with cols = 1.
json state_to_json(const DCVector& v);
DCVector state_from_json(const json& j);

/// {"kind": kind} for a single operator ("unitary" or "operator").
json operator_to_json(const DCMatrix& m, const std::string& kind = "unitary");
DCMatrix operator_from_json(const json& j);

struct MeasurementFile {
  std::vector<DCMatrix> operators;
  std::vector<std::string> labels;
  std::optional<CMatrix> dilation_gauge;  // generator K on the completed columns
};

json measurement_to_json(const MeasurementFile& m);
MeasurementFile measurement_from_json(const json& j);

/// Samples of a conventional family on an h-grid containing 0.
struct UnitaryFamilyFile {
  std::vector<double> h;
  std::vector<CMatrix> samples;
};

struct MeasurementFamilyFile {
  std::vector<double> h;
  std::vector<std::vector<CMatrix>> samples;
  std::vector<std::string> labels;
};

json unitary_family_to_json(const UnitaryFamilyFile& f);
UnitaryFamilyFile unitary_family_from_json(const json& j);
json measurement_family_to_json(const MeasurementFamilyFile& f);
MeasurementFamilyFile measurement_family_from_json(const json& j);

/// The "kind" tag. Throws ParseError when absent.
std::string kind_of(const json& j);

/// Throws ParseError carrying the line and column of the failure.
json parse(const std::string& text);
json read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// One row per site per snapshot.
void write_trajectory_csv(std::ostream& os, const std::vector<WalkState>& snapshots);
inline constexpr const char* kTrajectoryHeader =
    "t_step,x_index,psiplus_re_sig,psiplus_im_sig,psiplus_re_inf,psiplus_im_inf,"
    "psiminus_re_sig,psiminus_im_sig,psiminus_re_inf,psiminus_im_inf";

/// {mode, alpha, beta, max_discrepancy, fitted_order}; a NaN order is null.
json to_json(const CovarianceReport& r);

}  // namespace dcq::io

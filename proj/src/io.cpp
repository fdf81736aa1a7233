#include "dcq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dcq::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object()) fail("expected an object");
  const auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field \"") + name + "\"");
  return *it;
}

double number(const json& j) {
  if (!j.is_number()) fail("expected a number");
  return j.get<double>();
}

Index dimension(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail(std::string("\"") + name + "\" must be a nonnegative integer");
  }
  return static_cast<Index>(v.get<std::int64_t>());
}

void expect_kind(const json& j, const char* kind) {
  if (const std::string k = kind_of(j); k != kind) {
    fail("expected kind \"" + std::string(kind) + "\", got \"" + k + "\"");
  }
}

std::vector<double> h_grid(const json& j) {
  const json& h = field(j, "h");
  if (!h.is_array() || h.empty()) fail("\"h\" must be a nonempty array");
  std::vector<double> out;
  for (const auto& v : h) out.push_back(number(v));
  return out;
}

std::vector<std::string> labels_of(const json& j) {
  std::vector<std::string> out;
  if (const auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array()) fail("\"labels\" must be an array");
    for (const auto& l : *it) {
      if (!l.is_string()) fail("labels must be strings");
      out.push_back(l.get<std::string>());
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

json to_json(const DualComplex& w) {
  return json::array({w.sig().real(), w.sig().imag(), w.inf().real(), w.inf().imag()});
}

DualComplex scalar_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) fail("a scalar is an array of four numbers");
  return {Complex{number(j[0]), number(j[1])}, Complex{number(j[2]), number(j[3])}};
}

json to_json(const DCMatrix& m) {
  json entries = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) entries.push_back(to_json(m(r, c)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json to_json(const CMatrix& m) { return to_json(DCMatrix::from_sig(m)); }

DCMatrix matrix_from_json(const json& j) {
  const Index rows = dimension(j, "rows");
  const Index cols = dimension(j, "cols");
  const json& entries = field(j, "entries");
  if (!entries.is_array() || static_cast<Index>(entries.size()) != rows * cols) {
    fail("\"entries\" must hold rows*cols scalars");
  }
  DCMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      m.set(r, c, scalar_from_json(entries[static_cast<std::size_t>(r * cols + c)]));
  return m;
}

CMatrix complex_matrix_from_json(const json& j) {
  DCMatrix m = matrix_from_json(j);
  if (m.inf().size() > 0 && m.inf().cwiseAbs().maxCoeff() != 0.0) {
    fail("expected a conventional matrix with zero infinitesimal part");
  }
  return m.sig();
}

json state_to_json(const DCVector& v) {
  DCMatrix m(v.sig(), v.inf());
  json j = to_json(m);
  j["kind"] = "state";
  return j;
}

DCVector state_from_json(const json& j) {
  expect_kind(j, "state");
  const DCMatrix m = matrix_from_json(j);
  if (m.cols() != 1) fail("a state has cols = 1");
  return DCVector(m.sig().col(0), m.inf().col(0));
}

json operator_to_json(const DCMatrix& m, const std::string& kind) {
  json j = to_json(m);
  j["kind"] = kind;
  return j;
}

DCMatrix operator_from_json(const json& j) {
  const std::string k = kind_of(j);
  if (k != "unitary" && k != "operator") fail("expected kind \"unitary\" or \"operator\"");
  return matrix_from_json(j);
}

json measurement_to_json(const MeasurementFile& m) {
  json ops = json::array();
  for (const auto& op : m.operators) ops.push_back(to_json(op));
  json j = {{"kind", "measurement"}, {"operators", std::move(ops)}, {"labels", m.labels}};
  if (m.dilation_gauge) j["dilation_gauge"] = to_json(*m.dilation_gauge);
  return j;
}

MeasurementFile measurement_from_json(const json& j) {
  expect_kind(j, "measurement");
  MeasurementFile m;
  const json& ops = field(j, "operators");
  if (!ops.is_array() || ops.empty()) fail("\"operators\" must be a nonempty array");
  for (const auto& op : ops) m.operators.push_back(matrix_from_json(op));
  m.labels = labels_of(j);
  if (!m.labels.empty() && m.labels.size() != m.operators.size()) {
    fail("one label per operator");
  }
  if (const auto it = j.find("dilation_gauge"); it != j.end()) {
    m.dilation_gauge = complex_matrix_from_json(*it);
  }
  return m;
}

json unitary_family_to_json(const UnitaryFamilyFile& f) {
  json samples = json::array();
  for (const auto& s : f.samples) samples.push_back(to_json(s));
  return {{"kind", "unitary_family"}, {"h", f.h}, {"samples", std::move(samples)}};
}

UnitaryFamilyFile unitary_family_from_json(const json& j) {
  expect_kind(j, "unitary_family");
  UnitaryFamilyFile f;
  f.h = h_grid(j);
  const json& samples = field(j, "samples");
  if (!samples.is_array() || samples.size() != f.h.size()) fail("one sample per h value");
  for (const auto& s : samples) f.samples.push_back(complex_matrix_from_json(s));
  return f;
}

json measurement_family_to_json(const MeasurementFamilyFile& f) {
  json samples = json::array();
  for (const auto& ops : f.samples) {
    json row = json::array();
    for (const auto& op : ops) row.push_back(to_json(op));
    samples.push_back(std::move(row));
  }
  return {{"kind", "measurement_family"},
          {"h", f.h},
          {"samples", std::move(samples)},
          {"labels", f.labels}};
}

MeasurementFamilyFile measurement_family_from_json(const json& j) {
  expect_kind(j, "measurement_family");
  MeasurementFamilyFile f;
  f.h = h_grid(j);
  const json& samples = field(j, "samples");
  if (!samples.is_array() || samples.size() != f.h.size()) fail("one sample per h value");
  for (const auto& row : samples) {
    if (!row.is_array() || row.empty()) fail("each sample is a nonempty operator array");
    std::vector<CMatrix> ops;
    for (const auto& op : row) ops.push_back(complex_matrix_from_json(op));
    f.samples.push_back(std::move(ops));
  }
  f.labels = labels_of(j);
  return f;
}

std::string kind_of(const json& j) {
  const json& k = field(j, "kind");
  if (!k.is_string()) fail("\"kind\" must be a string");
  return k.get<std::string>();
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
         e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::InvalidArgument, "write failed: " + path);
}

void write_trajectory_csv(std::ostream& os, const std::vector<WalkState>& snapshots) {
  os << kTrajectoryHeader << '\n';
  for (const auto& w : snapshots) {
    for (Index x = 0; x < w.sites; ++x) {
      const DualComplex& p = w.plus[x];
      const DualComplex& q = w.minus[x];
      os << w.time << ',' << x << ',' << fmt(p.sig().real()) << ',' << fmt(p.sig().imag()) << ','
         << fmt(p.inf().real()) << ',' << fmt(p.inf().imag()) << ',' << fmt(q.sig().real()) << ','
         << fmt(q.sig().imag()) << ',' << fmt(q.inf().real()) << ',' << fmt(q.inf().imag())
         << '\n';
    }
  }
}

json to_json(const CovarianceReport& r) {
  json j = {{"mode", r.mode == CovarianceMode::DualExact ? "dual" : "corrected"},
            {"alpha", r.alpha},
            {"beta", r.beta},
            {"max_discrepancy", r.max_discrepancy}};
  j["fitted_order"] = std::isnan(r.fitted_order) ? json(nullptr) : json(r.fitted_order);
  return j;
}

}  // namespace dcq::io

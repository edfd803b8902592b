#include <cmath>

#include "ncat/json_io.hpp"

namespace ncat {

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::InvalidInput, std::string("expected a number for ") + what);
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidInput, std::string("non-finite value for ") + what);
  return x;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field ") + key);
  return j.at(key);
}

json mat_to_json(const Mat3& m) {
  json out = json::array();
  for (int r = 0; r < 3; ++r) out.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return out;
}

Mat3 mat_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::InvalidInput, "frame must be a 3x3 array");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    if (!j[r].is_array() || j[r].size() != 3) throw Error(ErrorCode::InvalidInput, "frame must be a 3x3 array");
    for (int c = 0; c < 3; ++c) m(r, c) = number(j[r][c], "frame");
  }
  if ((m * m.transpose() - Mat3::Identity()).norm() > 1e-8)
    throw Error(ErrorCode::InvalidInput, "frame must be orthogonal");
  return m;
}

template <class T, class F>
json map_array(const std::vector<T>& v, F f) {
  json out = json::array();
  for (const T& x : v) out.push_back(f(x));
  return out;
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return number(j, "complex");
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidInput, "complex values are [re, im]");
  return {number(j[0], "complex"), number(j[1], "complex")};
}

json extended_to_json(const ExtendedComplex& z) {
  return z.is_infinite() ? json("inf") : complex_to_json(z.value());
}

ExtendedComplex extended_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtendedComplex::infinity();
    throw Error(ErrorCode::InvalidInput, "the only string value allowed here is \"inf\"");
  }
  return ExtendedComplex(complex_from_json(j));
}

json poly_to_json(const Poly& p) { return map_array(p.coeffs(), complex_to_json); }

FluxData flux_from_json(const json& j) {
  const json& vs = field(j, "vectors");
  const json& ws = field(j, "weights");
  if (!vs.is_array() || !ws.is_array()) throw Error(ErrorCode::InvalidInput, "vectors and weights must be arrays");
  FluxData d;
  for (const json& v : vs) {
    if (!v.is_array() || v.size() != 3) throw Error(ErrorCode::InvalidInput, "each vector needs three components");
    Vec3 x(number(v[0], "vector"), number(v[1], "vector"), number(v[2], "vector"));
    if (std::abs(x.norm() - 1.0) > 1e-6) throw Error(ErrorCode::InvalidInput, "flux vector is not a unit vector");
    d.vectors.push_back(x.normalized());
  }
  for (const json& w : ws) d.weights.push_back(number(w, "weight"));
  d.validate();
  return d;
}

json flux_to_json(const FluxData& d) {
  json vs = json::array();
  for (const Vec3& v : d.vectors) vs.push_back({v.x(), v.y(), v.z()});
  return {{"vectors", vs}, {"weights", d.weights}};
}

json type_to_json(const TypeClass& t) {
  json out{{"type", to_string(t.kind)},
           {"span_dim", t.span_dim},
           {"singular_values", {t.singular_values.x(), t.singular_values.y(), t.singular_values.z()}}};
  if (t.D) {
    out["D"] = *t.D;
    out["D_infinity_index"] = t.d_infinity_index;
  }
  return out;
}

json obstructions_to_json(const ObstructionReport& r) {
  json hits = json::array();
  for (const ObstructionHit& h : r.hits)
    hits.push_back({{"condition", static_cast<int>(h.condition)},
                    {"name", obstruction_name(h.condition)},
                    {"indices", h.indices}});
  return {{"obstructed", r.any()}, {"hits", hits}};
}

json verification_to_json(const VerificationReport& r) {
  return {{"reduction2_residual", r.reduction2_residual},
          {"red_residual", r.red_residual},
          {"weight_errors", r.weight_errors},
          {"flux_vector_errors", r.flux_vector_errors},
          {"flux_sum_norm", r.flux_sum_norm},
          {"single_valued", r.single_valued},
          {"tolerance", r.tolerance}};
}

json oracles_to_json(const OracleReport& r) {
  json flux = json::array();
  for (const Vec3& v : r.flux) flux.push_back({v.x(), v.y(), v.z()});
  return {{"contour_flux", flux},
          {"flux_errors", r.flux_errors},
          {"hopf", map_array(r.hopf, complex_to_json)},
          {"hopf_errors", r.hopf_errors},
          {"loop_closure", r.closure},
          {"total_flux", r.total_flux},
          {"passed", r.passed()}};
}

json weierstrass_to_json(const WeierstrassData& w) {
  return {{"P", poly_to_json(w.P)},
          {"Q", poly_to_json(w.Q)},
          {"R", poly_to_json(w.R)},
          {"omega_scale", complex_to_json(w.omega_scale)},
          {"gauss_degree", w.gauss_degree},
          {"raw_degree", w.raw_degree},
          {"resultant", complex_to_json(w.resultant)},
          {"branched", w.branched}};
}

json candidate_to_json(const SolutionCandidate& c, double tol_residual) {
  const WeierstrassData w = weierstrass_from_solution(c);
  json out{{"label", c.label},
           {"origin", c.origin},
           {"n", c.n()},
           {"q", map_array(c.q, extended_to_json)},
           {"b", map_array(c.b, complex_to_json)},
           {"p", map_array(c.p, extended_to_json)},
           {"a", c.a},
           {"frame", mat_to_json(c.frame)},
           {"weierstrass", weierstrass_to_json(w)},
           {"branched", c.branched.value_or(w.branched)},
           {"verification", verification_to_json(verify_solution(c, tol_residual))}};
  return out;
}

SolutionCandidate candidate_from_json(const json& j) {
  SolutionCandidate c;
  const json& q = field(j, "q");
  const json& b = field(j, "b");
  const json& p = field(j, "p");
  const json& a = field(j, "a");
  if (!q.is_array() || !b.is_array() || !p.is_array() || !a.is_array())
    throw Error(ErrorCode::InvalidInput, "q, b, p and a must be arrays");
  for (const json& x : q) c.q.push_back(extended_from_json(x));
  for (const json& x : b) c.b.push_back(complex_from_json(x));
  for (const json& x : p) c.p.push_back(extended_from_json(x));
  for (const json& x : a) c.a.push_back(number(x, "weight"));
  if (j.contains("frame")) c.frame = mat_from_json(j.at("frame"));
  if (j.contains("label") && j.at("label").is_string()) c.label = j.at("label").get<std::string>();
  if (j.contains("origin") && j.at("origin").is_string()) c.origin = j.at("origin").get<std::string>();
  c.validate();
  return c;
}

std::vector<SolutionCandidate> candidates_from_json(const json& j) {
  std::vector<SolutionCandidate> out;
  if (j.is_array()) {
    for (const json& x : j) out.push_back(candidate_from_json(x));
  } else if (j.is_object() && j.contains("solutions")) {
    return candidates_from_json(j.at("solutions"));
  } else {
    out.push_back(candidate_from_json(j));
  }
  return out;
}

json family_to_json(const FamilySolution& f) {
  return {{"q", map_array(f.q, extended_to_json)},
          {"a", f.a},
          {"infinity_index", f.infinity_index},
          {"frame", mat_to_json(f.frame)},
          {"eqf_residual", f.eqf_residual},
          {"method", f.method}};
}

SamplingConfig sampling_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "sampling config must be an object");
  SamplingConfig cfg;
  auto integer = [&](const char* key, int& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) throw Error(ErrorCode::InvalidInput, std::string(key) + " must be an integer");
    dst = j.at(key).get<int>();
  };
  if (j.contains("base_point")) cfg.base_point = complex_from_json(j.at("base_point"));
  if (j.contains("end_truncation")) cfg.end_truncation = number(j.at("end_truncation"), "end_truncation");
  integer("radial_steps", cfg.radial_steps);
  integer("angular_steps", cfg.angular_steps);
  integer("grid_steps", cfg.grid_steps);
  integer("contour_samples", cfg.contour_samples);
  if (j.contains("integration_tol")) cfg.integration_tol = number(j.at("integration_tol"), "integration_tol");
  if (j.contains("metric_growth")) cfg.metric_growth = number(j.at("metric_growth"), "metric_growth");
  cfg.validate();
  return cfg;
}

}  // namespace ncat

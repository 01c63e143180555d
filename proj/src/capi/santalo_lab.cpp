#include "santalo_lab.h"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "santalo/mahler.hpp"
#include "santalo/shadow.hpp"
#include "santalo/verify.hpp"

using santalo::ErrorCode;
using santalo::GeometryError;
using santalo::Polytope;
using santalo::ShadowSystem;
using santalo::Vector;
using json = nlohmann::ordered_json;

struct sl_polytope {
  Polytope body;
};

struct sl_system {
  ShadowSystem system;
};

namespace {

thread_local std::string g_last_error;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kVolumeConvexityTol = 1e-9;

template <class Fn>
sl_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return SL_OK;
  } catch (const GeometryError& e) {
    g_last_error = std::string(santalo::error_code_name(e.code())) + ": " + e.what();
    return static_cast<sl_status>(static_cast<int>(e.code()));
  } catch (const ParseError& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return SL_PARSE_ERROR;
  } catch (const json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return SL_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "InternalError: out of memory";
    return SL_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = std::string("InternalError: ") + e.what();
    return SL_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) santalo::fail(ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

santalo::Tolerances tolerances(const sl_tolerances* tol) {
  santalo::Tolerances t;
  if (tol) {
    t.geom = tol->geom;
    t.sant = tol->sant;
    t.conv = tol->conv;
    t.ratio = tol->ratio;
    t.vol = tol->vol;
  }
  for (double v : {t.geom, t.sant, t.conv, t.ratio, t.vol}) {
    require(std::isfinite(v) && v > 0, "tolerances must be positive and finite");
  }
  return t;
}

json tolerance_json(const santalo::Tolerances& t) {
  return json{{"geom", t.geom}, {"sant", t.sant}, {"conv", t.conv}, {"ratio", t.ratio}, {"vol", t.vol}};
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json points_json(const santalo::PointList& pts) {
  json a = json::array();
  for (const Vector& p : pts) a.push_back(vector_json(p));
  return a;
}

json polytope_json(const Polytope& p) {
  json h = json::array();
  for (const santalo::Halfspace& f : p.halfspaces()) {
    h.push_back(json{{"normal", vector_json(f.normal)}, {"offset", f.offset}});
  }
  return json{{"dim", p.dim()}, {"vertices", points_json(p.vertices())}, {"halfspaces", h}};
}

Vector parse_vector(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + " must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(std::string(what) + " must contain numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

santalo::PointList parse_points(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + " must be a non-empty array");
  santalo::PointList pts;
  for (const json& p : j) {
    pts.push_back(parse_vector(p, what));
    if (pts.back().size() != pts.front().size()) {
      throw ParseError(std::string(what) + ": points have different dimensions");
    }
  }
  return pts;
}

Polytope parse_polytope(const json& j, double tol) {
  if (!j.is_object()) throw ParseError("polytope must be a JSON object");
  const char* key = j.contains("vertices") ? "vertices" : "points";
  if (!j.contains(key)) throw ParseError("polytope needs a \"vertices\" array");
  santalo::PointList pts = parse_points(j.at(key), key);
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer() || j.at("dim").get<long>() != pts.front().size()) {
      throw ParseError("\"dim\" does not match the vertex coordinates");
    }
  }
  return Polytope::hull(pts, tol);
}

santalo::Interval parse_interval(const json& j) {
  const Vector v = parse_vector(j, "interval");
  if (v.size() != 2) throw ParseError("interval must be [lo, hi]");
  return santalo::Interval{v[0], v[1]};
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(std::string("missing number \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

ShadowSystem parse_system(const json& j, double tol) {
  if (!j.is_object()) throw ParseError("system must be a JSON object");
  const std::string kind = j.value("kind", "points");
  if (kind == "steiner") {
    const Polytope body = parse_polytope(j.at("body"), tol);
    const Vector n = parse_vector(j.at("normal"), "normal");
    require(n.size() == body.dim() && n.norm() > 0, "normal must be a non-zero vector of the body's dimension");
    return santalo::steiner_system(body, santalo::Hyperplane(n, j.value("offset", 0.0)), tol);
  }
  if (kind == "affine") {
    const Polytope body = parse_polytope(j.at("body"), tol);
    const Vector big_v = parse_vector(j.at("V"), "V");
    return santalo::affine_family(body, number(j, "v"), big_v, number(j, "u"),
                                  parse_interval(j.at("interval")), tol);
  }
  if (kind != "points") throw ParseError("unknown system kind \"" + kind + "\"");
  santalo::PointList pts = parse_points(j.at("points"), "points");
  const Vector speeds = parse_vector(j.at("speeds"), "speeds");
  std::vector<double> sp(speeds.data(), speeds.data() + speeds.size());
  return ShadowSystem(std::move(pts), std::move(sp), parse_vector(j.at("direction"), "direction"),
                      parse_interval(j.at("interval")), tol);
}

json parse_text(const char* text) {
  require(text != nullptr, "input text is NULL");
  return json::parse(text);
}

json convexity_json(const santalo::ConvexityVerdict& v) {
  json w = nullptr;
  if (v.witness_triple) w = json::array({(*v.witness_triple)[0], (*v.witness_triple)[1], (*v.witness_triple)[2]});
  return json{{"is_midpoint_convex", v.is_midpoint_convex},
              {"worst_violation", v.worst_violation},
              {"tolerance", v.tolerance},
              {"witness_triple", w},
              {"triples", v.triples},
              {"excluded_rows", v.excluded_rows}};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

extern "C" {

sl_tolerances sl_default_tolerances(void) {
  return sl_tolerances{santalo::kGeomTol, santalo::kSantaloTol, santalo::kConvexityTol,
                       santalo::kRatioTol, santalo::kVolumeTol};
}

const char* sl_status_name(sl_status status) {
  switch (status) {
    case SL_OK: return "Ok";
    case SL_PARSE_ERROR: return "ParseError";
    case SL_INTERNAL_ERROR: return "InternalError";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(ErrorCode::kLpUnbounded)) {
    return santalo::error_code_name(static_cast<ErrorCode>(code));
  }
  return "Unknown";
}

const char* sl_last_error(void) { return g_last_error.c_str(); }

void sl_string_free(char* s) { std::free(s); }

sl_status sl_polytope_from_points(int dim, size_t count, const double* coords,
                                  const sl_tolerances* tol, sl_polytope** out) {
  return guarded([&] {
    require(out && coords && dim > 0 && count > 0, "sl_polytope_from_points: bad arguments");
    *out = nullptr;
    santalo::PointList pts;
    for (size_t i = 0; i < count; ++i) {
      pts.push_back(Eigen::Map<const Vector>(coords + i * dim, dim));
    }
    *out = new sl_polytope{Polytope::hull(pts, tolerances(tol).geom)};
  });
}

sl_status sl_polytope_from_json(const char* text, const sl_tolerances* tol, sl_polytope** out) {
  return guarded([&] {
    require(out != nullptr, "sl_polytope_from_json: out is NULL");
    *out = nullptr;
    *out = new sl_polytope{parse_polytope(parse_text(text), tolerances(tol).geom)};
  });
}

void sl_polytope_free(sl_polytope* p) { delete p; }

sl_status sl_polytope_dim(const sl_polytope* p, int* out) {
  return guarded([&] {
    require(p && out, "sl_polytope_dim: NULL argument");
    *out = p->body.dim();
  });
}

sl_status sl_polytope_vertex_count(const sl_polytope* p, size_t* out) {
  return guarded([&] {
    require(p && out, "sl_polytope_vertex_count: NULL argument");
    *out = p->body.vertex_count();
  });
}

sl_status sl_polytope_vertex(const sl_polytope* p, size_t index, double* out) {
  return guarded([&] {
    require(p && out, "sl_polytope_vertex: NULL argument");
    require(index < p->body.vertex_count(), "sl_polytope_vertex: index out of range");
    const Vector& v = p->body.vertices()[index];
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i];
  });
}

sl_status sl_polytope_volume(const sl_polytope* p, double* out) {
  return guarded([&] {
    require(p && out, "sl_polytope_volume: NULL argument");
    *out = santalo::volume(p->body);
  });
}

sl_status sl_polytope_to_json(const sl_polytope* p, char** out) {
  return guarded([&] {
    require(p && out, "sl_polytope_to_json: NULL argument");
    *out = dup_string(polytope_json(p->body).dump());
  });
}

sl_status sl_polar(const sl_polytope* p, const double* center, const sl_tolerances* tol,
                   char** report_json) {
  return guarded([&] {
    require(p && report_json, "sl_polar: NULL argument");
    const santalo::Tolerances t = tolerances(tol);
    const int d = p->body.dim();
    Vector z;
    bool default_center = center == nullptr;
    if (default_center) {
      santalo::SantaloOptions opt;
      opt.tol = t.sant;
      const santalo::SantaloResult r = santalo::santalo_point(p->body, opt);
      if (!r.converged) santalo::fail(ErrorCode::kMaxIterations, "sl_polar: Santalo solver did not converge");
      z = r.point;
    } else {
      z = Eigen::Map<const Vector>(center, d);
    }
    const santalo::PolarBody pb = santalo::polar(p->body, z, t.geom);
    const double vol = santalo::volume(p->body);
    json out{{"tolerances", tolerance_json(t)},
             {"center", vector_json(z)},
             {"center_is_santalo_point", default_center},
             {"volume", vol},
             {"polar_volume", pb.polar_volume},
             {"volume_product", vol * pb.polar_volume},
             {"polar", polytope_json(pb.polar)}};
    *report_json = dup_string(out.dump());
  });
}

sl_status sl_santalo(const sl_polytope* p, const sl_tolerances* tol, char** report_json) {
  return guarded([&] {
    require(p && report_json, "sl_santalo: NULL argument");
    const santalo::Tolerances t = tolerances(tol);
    santalo::SantaloOptions opt;
    opt.tol = t.sant;
    const santalo::SantaloResult r = santalo::santalo_point(p->body, opt);
    const double vol = santalo::volume(p->body);
    json out{{"tolerances", tolerance_json(t)},
             {"santalo_point", vector_json(r.point)},
             {"polar_volume", r.polar_volume},
             {"volume", vol},
             {"volume_product", vol * r.polar_volume},
             {"centroid_residual", r.centroid_residual},
             {"iterations", r.iterations},
             {"converged", r.converged}};
    *report_json = dup_string(out.dump());
  });
}

sl_status sl_simplex_bound(int d, double* out) {
  return guarded([&] {
    require(out != nullptr, "sl_simplex_bound: out is NULL");
    *out = santalo::simplex_bound(d);
  });
}

sl_status sl_volume_product(const sl_polytope* p, const sl_tolerances* tol, double* out) {
  return guarded([&] {
    require(p && out, "sl_volume_product: NULL argument");
    *out = santalo::volume_product(p->body, tolerances(tol).sant);
  });
}

sl_status sl_classify(const sl_polytope* p, const sl_tolerances* tol, char** report_json) {
  return guarded([&] {
    require(p && report_json, "sl_classify: NULL argument");
    const santalo::Tolerances t = tolerances(tol);
    const santalo::Classification c = santalo::classify(p->body, t.geom);
    json out{{"tolerances", tolerance_json(t)},
             {"label", santalo::case_label_name(c.label)},
             {"vertices", p->body.vertex_count()},
             {"margin", c.margin},
             {"coplanar", c.coplanar}};
    if (c.x1 >= 0) {
      out["x1"] = c.x1;
      out["x2"] = c.x2;
      out["xi1"] = c.xi1;
      out["xi2"] = c.xi2;
    }
    *report_json = dup_string(out.dump());
  });
}

sl_status sl_symmetrize(const sl_polytope* p, const double* normal, double offset,
                        const sl_tolerances* tol, char** report_json) {
  return guarded([&] {
    require(p && normal && report_json, "sl_symmetrize: NULL argument");
    const santalo::Tolerances t = tolerances(tol);
    const Vector n = Eigen::Map<const Vector>(normal, p->body.dim());
    require(n.norm() > 0, "sl_symmetrize: zero normal");
    const santalo::Hyperplane h(n, offset);
    const Polytope sym = santalo::steiner_symmetral(p->body, h, t.geom);
    const double vp_before = santalo::volume_product(p->body, t.sant);
    const double vp_after = santalo::volume_product(sym, t.sant);
    json out{{"tolerances", tolerance_json(t)},
             {"normal", vector_json(h.normal)},
             {"offset", h.offset},
             {"volume", santalo::volume(p->body)},
             {"symmetral_volume", santalo::volume(sym)},
             {"volume_product", vp_before},
             {"symmetral_volume_product", vp_after},
             {"symmetral", polytope_json(sym)}};
    *report_json = dup_string(out.dump());
  });
}

sl_status sl_system_from_json(const char* text, const sl_tolerances* tol, sl_system** out) {
  return guarded([&] {
    require(out != nullptr, "sl_system_from_json: out is NULL");
    *out = nullptr;
    *out = new sl_system{parse_system(parse_text(text), tolerances(tol).geom)};
  });
}

void sl_system_free(sl_system* s) { delete s; }

sl_status sl_system_dim(const sl_system* s, int* out) {
  return guarded([&] {
    require(s && out, "sl_system_dim: NULL argument");
    *out = s->system.dim();
  });
}

sl_status sl_system_interval(const sl_system* s, double* lo, double* hi) {
  return guarded([&] {
    require(s && lo && hi, "sl_system_interval: NULL argument");
    *lo = s->system.interval().lo;
    *hi = s->system.interval().hi;
  });
}

sl_status sl_shadow_sweep(const sl_system* s, int grid, const sl_tolerances* tol, char** csv,
                          char** verdict_json, int* violations) {
  return guarded([&] {
    require(s && csv && verdict_json, "sl_shadow_sweep: NULL argument");
    const santalo::Tolerances t = tolerances(tol);
    const std::vector<double> ts = santalo::uniform_grid(s->system.interval(), grid);
    santalo::SweepOptions opt;
    opt.tol_sant = t.sant;
    const std::vector<santalo::SweepRecord> rows = santalo::sweep(s->system, ts, opt);
    const int d = s->system.dim();

    std::string text = "t,volume,polar_volume";
    for (int i = 1; i <= d; ++i) text += ",santalo_" + std::to_string(i);
    text += ",converged\n";
    int failed = 0;
    for (const santalo::SweepRecord& r : rows) {
      const bool ok = r.error.empty();
      if (!ok) ++failed;
      text += format_double(r.t);
      text += "," + (ok ? format_double(r.volume) : std::string("nan"));
      text += "," + (ok ? format_double(r.polar_volume) : std::string("nan"));
      for (int i = 0; i < d; ++i) text += "," + (ok ? format_double(r.santalo[i]) : std::string("nan"));
      text += r.converged ? ",1\n" : ",0\n";
    }

    const santalo::ConvexityVerdict vol = santalo::check_volume_convexity(rows, kVolumeConvexityTol);
    const santalo::ConvexityVerdict pol = santalo::check_polar_convexity(rows, t.conv);
    json errors = json::array();
    for (const santalo::SweepRecord& r : rows) {
      if (!r.error.empty()) errors.push_back(json{{"t", r.t}, {"error", r.error}});
    }
    json out{{"tolerances", tolerance_json(t)},
             {"grid", grid},
             {"interval", json::array({s->system.interval().lo, s->system.interval().hi})},
             {"volume_convexity", convexity_json(vol)},
             {"inverse_polar_convexity", convexity_json(pol)},
             {"failed_rows", failed},
             {"errors", errors}};
    *csv = dup_string(text);
    *verdict_json = dup_string(out.dump());
    if (violations) *violations = int(!vol.is_midpoint_convex) + int(!pol.is_midpoint_convex);
  });
}

sl_status sl_verify_chain(const sl_system* sys, double s, double t, int grid,
                          const sl_tolerances* tol, char** report_json, int* violations) {
  return guarded([&] {
    require(sys && report_json, "sl_verify_chain: NULL argument");
    const santalo::Tolerances tl = tolerances(tol);
    const santalo::ChainReport r = santalo::lemma_chain_check(sys->system, s, t, grid, tl.sant);
    auto hyp = [](const santalo::HypothesisReport& h) {
      return json{{"holds", h.holds}, {"worst_slack", h.worst_slack},
                  {"witness", json::array({h.witness_y, h.witness_z})}, {"pairs", h.pairs}};
    };
    auto con = [](const santalo::ConclusionReport& c) {
      return json{{"status", santalo::conclusion_status_name(c.status)},
                  {"slack", c.slack},
                  {"integration_error", c.integration_error},
                  {"integrals", json::array({c.integral_f, c.integral_g, c.integral_h})}};
    };
    json out{{"tolerances", tolerance_json(tl)},
             {"s", r.s},
             {"t", r.t},
             {"santalo_point_mid", vector_json(r.center)},
             {"balanced", {{"a_s", r.balanced.a_s}, {"a_t", r.balanced.a_t},
                           {"ratio_s", r.balanced.ratio_s}, {"ratio_t", r.balanced.ratio_t},
                           {"ratio_mismatch", r.balanced.ratio_mismatch}}},
             {"slice_inclusion", {{"holds", r.inclusion.holds}, {"worst_excess", r.inclusion.worst_excess},
                                  {"points", r.inclusion.points}}},
             {"hypothesis_plus", hyp(r.hypothesis_plus)},
             {"hypothesis_minus", hyp(r.hypothesis_minus)},
             {"conclusion_plus", con(r.conclusion_plus)},
             {"conclusion_minus", con(r.conclusion_minus)},
             {"half_volumes", {{"holds", r.half_volumes.holds}, {"plus_slack", r.half_volumes.plus_slack},
                               {"minus_slack", r.half_volumes.minus_slack}}},
             {"midpoint", {{"holds", r.midpoint_holds}, {"lhs", r.midpoint_lhs},
                           {"rhs_centered", r.midpoint_rhs_centered}, {"rhs", r.midpoint_rhs}}},
             {"passed", r.passed}};
    *report_json = dup_string(out.dump());
    if (violations) {
      *violations = int(!r.inclusion.holds) + int(!r.hypothesis_plus.holds) +
                    int(!r.hypothesis_minus.holds) +
                    int(r.conclusion_plus.status == santalo::ConclusionReport::Status::kViolation) +
                    int(r.conclusion_minus.status == santalo::ConclusionReport::Status::kViolation) +
                    int(!r.half_volumes.holds) + int(!r.midpoint_holds);
    }
  });
}

sl_status sl_search(int d, int k, int trials, uint64_t seed, sl_line_callback on_line, void* user,
                    char** report_json, int* violations) {
  return guarded([&] {
    require(report_json != nullptr, "sl_search: report_json is NULL");
    require(trials > 0, "sl_search: trials must be positive");
    const bool polygons = d == 2 && k == 0;
    auto progress = [&](const santalo::CampaignProgress& p) {
      if (!on_line) return;
      const json line{{"trials_done", p.trials_done}, {"min_vp", p.min_vp}, {"violations", p.violations}};
      on_line(line.dump().c_str(), user);
    };
    const santalo::CampaignReport r =
        polygons ? santalo::verify_theorem_D_2d(trials, seed, progress)
                 : santalo::verify_theorem_B(d, k, trials, seed, progress);
    json viol = json::array();
    for (const santalo::CampaignViolation& v : r.violations) {
      viol.push_back(json{{"trial", v.trial}, {"vp", v.vp}, {"kind", v.kind}, {"vertices", points_json(v.vertices)}});
    }
    json out{{"tolerances", tolerance_json(santalo::Tolerances{})},
             {"seed", r.seed},
             {"d", r.d},
             {"k", polygons ? json("3..12") : json(r.k)},
             {"trials", r.trials},
             {"bound", r.bound},
             {"min_vp", r.min_vp},
             {"margin", r.min_vp - r.bound},
             {"argmin_trial", r.argmin_trial},
             {"argmin_label", r.argmin_label},
             {"argmin_vertices", points_json(r.argmin_vertices)},
             {"violations", viol},
             {"ill_conditioned", r.ill_conditioned},
             {"unconverged", r.unconverged},
             {"rejected_draws", r.rejected_draws}};
    if (polygons) out["closest_non_simplex"] = r.closest_non_simplex;
    *report_json = dup_string(out.dump());
    if (violations) *violations = static_cast<int>(r.violations.size());
  });
}

}  // extern "C"

#include "santalo/mahler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace santalo {

double simplex_bound(int d) {
  if (d < 1) fail(ErrorCode::kInvalidArgument, "simplex_bound: d must be >= 1");
  return std::pow(d + 1.0, d + 1) / (factorial(d) * factorial(d));
}

double pyramid_factor(int d) {
  if (d < 2) fail(ErrorCode::kInvalidArgument, "pyramid_factor: d must be >= 2");
  return std::pow(d + 1.0, d + 1) / std::pow(double(d), d + 2);
}

PyramidReport pyramid_factorization_check(const Polytope& base, const Vector& apex) {
  const int d = base.dim() + 1;
  if (apex.size() != d) fail(ErrorCode::kInvalidArgument, "pyramid: apex has wrong dimension");
  if (std::abs(apex[d - 1]) <= kGeomTol * std::max(1.0, base.scale())) {
    fail(ErrorCode::kDegenerateInput, "pyramid: apex lies in the base hyperplane");
  }
  PointList pts;
  for (const Vector& v : base.vertices()) pts.push_back(insert_coordinate(v, d - 1, 0.0));
  pts.push_back(apex);
  const Polytope k = Polytope::hull(pts);

  PyramidReport r;
  const SantaloResult sk = santalo_point(k);
  const SantaloResult sf = santalo_point(base);
  if (!sk.converged || !sf.converged) {
    fail(ErrorCode::kMaxIterations, "pyramid: Santalo solver did not converge");
  }
  r.vp_pyramid = volume(k) * sk.polar_volume;
  r.vp_base = volume(base) * sf.polar_volume;
  r.predicted = pyramid_factor(d) * r.vp_base;
  r.factor_rel_error = std::abs(r.vp_pyramid - r.predicted) / r.predicted;
  r.santalo = sk.point;
  r.base_santalo = insert_coordinate(sf.point, d - 1, 0.0);

  const Vector axis = apex - r.base_santalo;
  const Vector rel = r.santalo - r.base_santalo;
  const double along = rel.dot(axis) / axis.norm();
  r.collinearity_ratio = axis.norm() / rel.norm();
  r.off_line_distance = std::sqrt(std::max(0.0, rel.squaredNorm() - along * along)) / k.diameter();
  return r;
}

const char* case_label_name(CaseLabel label) {
  switch (label) {
    case CaseLabel::kSimplex: return "SIMPLEX";
    case CaseLabel::kPyramidIa: return "PYRAMID_Ia";
    case CaseLabel::kSimplicialIb: return "SIMPLICIAL_Ib";
    case CaseLabel::kPyramidIIa: return "PYRAMID_IIa";
    case CaseLabel::kDoublePyramidIIb1: return "DOUBLE_PYR_IIb1";
    case CaseLabel::kSkewIIb2: return "SKEW_IIb2";
    case CaseLabel::kParallelIIb3: return "PARALLEL_IIb3";
    case CaseLabel::kSimplicialIIc: return "SIMPLICIAL_IIc";
  }
  return "UNKNOWN";
}

namespace {

// Calls fn on every strictly increasing index tuple of length r from [0, n).
template <class Fn>
void for_each_subset(int n, int r, Fn&& fn) {
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct SpanResult {
  bool independent = false;
  double conditioning = 0.0;  // smallest singular value of the edge matrix
  Hyperplane plane;
};

SpanResult span_hyperplane(const PointList& v, const std::vector<int>& idx, double tol) {
  const int d = static_cast<int>(v.front().size());
  Matrix e(d, d - 1);
  for (int j = 1; j < d; ++j) e.col(j - 1) = v[idx[j]] - v[idx[0]];
  Eigen::JacobiSVD<Matrix> svd(e, Eigen::ComputeFullU);
  SpanResult s;
  s.conditioning = d > 1 ? svd.singularValues()[d - 2] : 1.0;
  s.independent = s.conditioning > tol;
  if (s.independent) {
    const Vector n = svd.matrixU().col(d - 1);
    s.plane = Hyperplane(n, n.dot(v[idx[0]]));
  }
  return s;
}

}  // namespace

Classification classify(const Polytope& k, double tol) {
  const int d = k.dim();
  const int n = static_cast<int>(k.vertex_count());
  if (n > d + 3) {
    fail(ErrorCode::kTooManyVertices, "classify: " + std::to_string(n) + " vertices exceed d + 3");
  }
  const PointList& v = k.vertices();
  const double scale = k.scale();
  const double band = tol * scale;

  Classification c;
  c.margin = 1.0;
  if (n == d + 1) {
    c.label = CaseLabel::kSimplex;
    return c;
  }

  int best_count = 0;
  std::vector<int> best_set;
  Hyperplane best_plane;
  for_each_subset(n, d, [&](const std::vector<int>& idx) {
    const SpanResult s = span_hyperplane(v, idx, band);
    c.margin = std::min(c.margin, s.conditioning / scale);
    if (!s.independent) return;
    std::vector<int> on;
    for (int i = 0; i < n; ++i) {
      const double dist = std::abs(s.plane.signed_distance(v[i]));
      if (dist <= band) {
        on.push_back(i);
      } else {
        c.margin = std::min(c.margin, dist / scale);
      }
    }
    if (static_cast<int>(on.size()) > best_count) {
      best_count = static_cast<int>(on.size());
      best_set = on;
      best_plane = s.plane;
    }
  });

  if (n == d + 2) {
    c.label = best_count >= d + 1 ? CaseLabel::kPyramidIa : CaseLabel::kSimplicialIb;
    if (c.label == CaseLabel::kPyramidIa) {
      c.coplanar = best_set;
      c.plane = best_plane;
    }
    return c;
  }
  if (best_count >= d + 2) {
    c.label = CaseLabel::kPyramidIIa;
    c.coplanar = best_set;
    c.plane = best_plane;
    return c;
  }
  if (best_count <= d) {
    c.label = CaseLabel::kSimplicialIIc;
    return c;
  }

  c.coplanar = best_set;
  std::vector<int> others;
  for (int i = 0; i < n; ++i) {
    if (std::find(best_set.begin(), best_set.end(), i) == best_set.end()) others.push_back(i);
  }
  Hyperplane h = best_plane;
  double xi1 = h.signed_distance(v[others[0]]);
  double xi2 = h.signed_distance(v[others[1]]);
  if (xi1 + xi2 < 0) {
    h = Hyperplane(-h.normal, -h.offset);
    xi1 = -xi1;
    xi2 = -xi2;
  }
  c.x1 = others[0];
  c.x2 = others[1];
  if (xi1 > xi2) {
    std::swap(xi1, xi2);
    std::swap(c.x1, c.x2);
  }
  c.plane = h;
  c.xi1 = xi1;
  c.xi2 = xi2;
  if (xi1 < 0) {
    c.label = CaseLabel::kDoublePyramidIIb1;
  } else if (xi2 - xi1 <= band) {
    c.label = CaseLabel::kParallelIIb3;
  } else {
    c.label = CaseLabel::kSkewIIb2;
    c.margin = std::min(c.margin, (xi2 - xi1) / scale);
  }
  return c;
}

namespace {

// (d-1)-volume of each facet of q, from its boundary triangulation.
std::vector<double> facet_areas(const Polytope& q) {
  const int d = q.dim();
  std::vector<double> area(q.halfspaces().size(), 0.0);
  for (const BoundarySimplex& s : q.boundary()) {
    Matrix e(d, d - 1);
    for (int j = 1; j < d; ++j) e.col(j - 1) = q.vertices()[s.vertex[j]] - q.vertices()[s.vertex[0]];
    const double gram = (e.transpose() * e).determinant();
    area[s.facet] += std::sqrt(std::max(0.0, gram)) / factorial(d - 1);
  }
  return area;
}

PointList local_points(const HyperplaneFrame& frame, const PointList& pts) {
  PointList out;
  for (const Vector& p : pts) out.push_back(frame.to_local(p));
  return out;
}

DescentMove vertex_slide(const Polytope& k, CaseLabel label, double tol) {
  const int d = k.dim();
  const PointList& v = k.vertices();
  const int n = static_cast<int>(v.size());
  const double band = tol * k.scale();

  for (int i = 0; i < n; ++i) {
    PointList rest;
    for (int j = 0; j < n; ++j) {
      if (j != i) rest.push_back(v[j]);
    }
    std::optional<Polytope> q;
    try {
      q = Polytope::hull(rest, tol);
    } catch (const GeometryError&) {
      continue;
    }
    if (static_cast<int>(q->vertex_count()) != n - 1) continue;

    // The volume of conv(q, y) is affine in y while the set of facets of q
    // visible from y stays fixed; its gradient is the area-weighted sum of
    // the visible outward normals.
    const std::vector<double> area = facet_areas(*q);
    Vector grad = Vector::Zero(d);
    for (size_t f = 0; f < q->halfspaces().size(); ++f) {
      if (q->halfspaces()[f].slack(v[i]) < 0) grad += area[f] * q->halfspaces()[f].normal;
    }
    if (grad.norm() <= tol) continue;
    const Vector g = grad.normalized();

    for (const Halfspace& target : k.halfspaces()) {
      if (target.slack(v[i]) <= band) continue;
      Vector dir = target.normal - target.normal.dot(g) * g;
      if (dir.norm() <= 1e-9) continue;
      dir.normalize();

      double up = std::numeric_limits<double>::infinity();
      double down = std::numeric_limits<double>::infinity();
      for (const Halfspace& h : q->halfspaces()) {
        const double rate = h.normal.dot(dir);
        if (std::abs(rate) <= 1e-14) continue;
        const double hit = h.slack(v[i]) / rate;
        if (hit > 0) up = std::min(up, hit);
        if (hit < 0) down = std::min(down, -hit);
      }
      if (!std::isfinite(up) || !std::isfinite(down) || up <= band || down <= band) continue;

      std::vector<double> speeds(n, 0.0);
      speeds[i] = 1.0;
      std::ostringstream what;
      what << "vertex " << i << " slides along a volume-preserving hyperplane until it reaches "
           << "a facet hyperplane of the other vertices' hull at both ends";
      const double vol = volume(k);
      return DescentMove{label, ShadowSystem(v, speeds, dir, Interval{-down, up}, tol),
                         Interval{-down, up}, what.str(), vol, 0.0, Vector()};
    }
  }
  fail(ErrorCode::kGeometryInconsistent, "descent_move: no vertex slide with a bounded range");
}

}  // namespace

DescentMove descent_move(const Polytope& k, double tol) {
  return descent_move(k, classify(k, tol), tol);
}

DescentMove descent_move(const Polytope& k, const Classification& c, double tol) {
  const int d = k.dim();
  switch (c.label) {
    case CaseLabel::kSimplex:
    case CaseLabel::kPyramidIa:
    case CaseLabel::kPyramidIIa:
      fail(ErrorCode::kInvalidArgument,
           std::string("descent_move: no move for ") + case_label_name(c.label));
    case CaseLabel::kSimplicialIb:
    case CaseLabel::kSimplicialIIc:
      return vertex_slide(k, c.label, tol);
    default:
      break;
  }

  const PointList& v = k.vertices();
  const Vector x1 = v[c.x1];
  const Vector x2 = v[c.x2];
  const Vector seg = x2 - x1;
  const double len = seg.norm();
  const Vector dir = seg / len;
  const double xi1 = c.xi1;
  const double xi2 = c.xi2;
  const double vol = volume(k);
  HyperplaneFrame frame(c.plane);
  PointList face;
  for (int i : c.coplanar) face.push_back(v[i]);
  const PointList face_local = local_points(frame, face);

  std::vector<double> speeds(v.size(), 0.0);
  if (c.label == CaseLabel::kDoublePyramidIIb1) {
    const Vector cross = x1 + (-xi1 / (xi2 - xi1)) * seg;
    const Polytope f = Polytope::hull(face_local, tol);
    if (!f.contains(frame.to_local(cross), tol)) {
      fail(ErrorCode::kGeometryInconsistent, "descent_move: segment of a double pyramid misses F");
    }
    speeds[c.x1] = len;
    speeds[c.x2] = len;
    const Interval range{-xi2 / (xi2 - xi1), -xi1 / (xi2 - xi1)};
    return DescentMove{c.label, ShadowSystem(v, speeds, dir, range, tol), range,
                       "the segment [x1, x2] shifts along its line; the ends are pyramids over F "
                       "with apex x1, respectively x2",
                       vol, 0.0, Vector()};
  }

  if (c.label == CaseLabel::kSkewIIb2) {
    const Vector x0 = x1 + (-xi1 / (xi2 - xi1)) * seg;
    PointList with_x0 = face_local;
    with_x0.push_back(frame.to_local(x0));
    const double v2 = hull_volume(with_x0, tol);
    const double v1 = v2 - hull_volume(face_local, tol);
    if (!(v1 > tol * v2)) {
      fail(ErrorCode::kGeometryInconsistent, "descent_move: x0 lies in F for a skew configuration");
    }
    const double q = v1 / v2;
    speeds[c.x1] = len;
    speeds[c.x2] = q * len;
    const Interval range{-xi1 / (xi2 - xi1), 1.0 / (1.0 - q)};
    return DescentMove{c.label, ShadowSystem(v, speeds, dir, range, tol), range,
                       "x1 and x2 slide along their line at speeds v and (V1/V2) v; the ends are "
                       "pyramids over conv(x0, F), respectively over F",
                       vol, 0.0, Vector()};
  }

  // Parallel case: |K_t| = |K| + t xi |x2 - x1| |P_L F| / (d (d - 1)).
  const double xi = 0.5 * (xi1 + xi2);
  const Vector dir_local = frame.to_local(x1 + dir) - frame.to_local(x1);
  double projected = 1.0;
  if (d > 2) {
    const Matrix basis = orthogonal_complement(dir_local.normalized());
    PointList proj;
    for (const Vector& p : face_local) proj.push_back(basis.transpose() * p);
    projected = hull_volume(proj, tol);
  }
  const double slope = xi * len * projected / (d * (d - 1.0));
  speeds[c.x2] = len;
  const Interval range{-1.0, 1e3};
  return DescentMove{c.label, ShadowSystem(v, speeds, dir, range, tol), range,
                     "x2 stretches away from x1 along their line; t = -1 is a pyramid over F and "
                     "t -> infinity tends to a pyramid over the projection along v",
                     vol, slope, dir};
}

double move_volume_product(const DescentMove& move, double t) {
  Polytope body = move.system.body_at(t);
  if (move.label == CaseLabel::kParallelIIb3 && t > 0) {
    const Vector& u = move.stretch_direction;
    const Matrix a = Matrix::Identity(u.size(), u.size()) + (1.0 / (1.0 + t) - 1.0) * u * u.transpose();
    body = apply_affine(body, a, Vector::Zero(u.size()));
  }
  return volume_product(body);
}

DescentReport verify_descent_monotonicity(const DescentMove& move, int samples, double rel_tol) {
  if (samples < 3) fail(ErrorCode::kInsufficientGrid, "descent: need at least 3 samples");
  DescentReport r;
  r.t = uniform_grid(move.t_range, samples);
  const double ref = move.volume_at_zero;
  std::vector<double> inv_polar(samples, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < samples; ++i) {
    const double t = r.t[i];
    double vp = std::numeric_limits<double>::quiet_NaN();
    double vol = std::numeric_limits<double>::quiet_NaN();
    try {
      const Polytope body = move.system.body_at(t);
      vol = volume(body);
      vp = move_volume_product(move, t);
      inv_polar[i] = vol / vp;
    } catch (const GeometryError&) {
      ++r.failed_rows;
    }
    r.vp.push_back(vp);
    r.volume.push_back(vol);
    if (std::isfinite(vol)) {
      const double law = ref + move.volume_slope * t;
      r.volume_law_error = std::max(r.volume_law_error, std::abs(vol - law) / std::max(law, ref));
    }
  }
  r.endpoint_min = std::min(r.vp.front(), r.vp.back());
  r.interior_min = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < samples; ++i) {
    if (std::isfinite(r.vp[i])) r.interior_min = std::min(r.interior_min, r.vp[i]);
  }
  r.endpoint_minimal = r.failed_rows == 0 && std::isfinite(r.endpoint_min) &&
                       r.interior_min >= r.endpoint_min * (1.0 - rel_tol);

  if (move.label == CaseLabel::kParallelIIb3) {
    bool convex = r.failed_rows == 0;
    double top = 0.0;
    for (double x : inv_polar) top = std::max(top, std::abs(x));
    for (int i = 0; i < samples && convex; ++i) {
      for (int j = i + 2; j < samples; j += 2) {
        const int m = (i + j) / 2;
        if (inv_polar[m] > 0.5 * (inv_polar[i] + inv_polar[j]) + rel_tol * top) {
          convex = false;
          break;
        }
      }
    }
    r.quotient_structure = convex && r.volume_law_error <= 1e-9 && r.endpoint_minimal;
  }
  return r;
}

namespace {

int campaign_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SANTALO_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::mt19937_64 trial_rng(uint64_t seed, int index) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(index)};
  return std::mt19937_64(seq);
}

constexpr double kMarginFactor = 10.0;
constexpr double kConditionLimit = 1e8;
constexpr long kMaxDraws = 1000000;

struct TrialResult {
  enum class Status { kOk, kIllConditioned, kUnconverged } status = Status::kOk;
  double vp = 0.0;
  PointList vertices;
  std::string label;
  long rejected = 0;
};

TrialResult evaluate(const Polytope& k, std::string label, long rejected) {
  TrialResult r;
  r.vertices = k.vertices();
  r.label = std::move(label);
  r.rejected = rejected;
  if (k.diameter() / inradius(k) > kConditionLimit) {
    r.status = TrialResult::Status::kIllConditioned;
    return r;
  }
  const SantaloResult s = santalo_point(k);
  if (!s.converged) {
    r.status = TrialResult::Status::kUnconverged;
    return r;
  }
  r.vp = volume(k) * s.polar_volume;
  return r;
}

template <class Fn>
CampaignReport run_campaign(int d, int k, int trials, uint64_t seed, double bound,
                            const ProgressCallback& progress, int threads, Fn&& trial) {
  CampaignReport rep;
  rep.seed = seed;
  rep.d = d;
  rep.k = k;
  rep.trials = trials;
  rep.bound = bound;
  rep.min_vp = std::numeric_limits<double>::infinity();
  rep.closest_non_simplex = std::numeric_limits<double>::infinity();
  const int workers = campaign_threads(threads);
  constexpr int kChunk = 100;

  for (int begin = 0; begin < trials; begin += kChunk) {
    const int end = std::min(trials, begin + kChunk);
    std::vector<TrialResult> results(end - begin);
    std::vector<std::string> errors(end - begin);
    std::atomic<int> next{begin};
    auto work = [&] {
      for (int i = next++; i < end; i = next++) {
        try {
          results[i - begin] = trial(i);
        } catch (const std::exception& e) {
          errors[i - begin] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < std::min(workers, end - begin); ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();

    for (int i = begin; i < end; ++i) {
      if (!errors[i - begin].empty()) throw std::runtime_error(errors[i - begin]);
      const TrialResult& r = results[i - begin];
      rep.rejected_draws += r.rejected;
      if (r.status == TrialResult::Status::kIllConditioned) {
        ++rep.ill_conditioned;
        continue;
      }
      if (r.status == TrialResult::Status::kUnconverged) {
        ++rep.unconverged;
        continue;
      }
      if (r.vp < rep.min_vp) {
        rep.min_vp = r.vp;
        rep.argmin_trial = i;
        rep.argmin_vertices = r.vertices;
        rep.argmin_label = r.label;
      }
      if (r.vp < bound - 1e-6) {
        rep.violations.push_back(CampaignViolation{i, r.vp, r.vertices, "below simplex bound"});
      }
      if (r.label != case_label_name(CaseLabel::kSimplex)) {
        if (std::abs(r.vp - bound) < std::abs(rep.closest_non_simplex - bound)) {
          rep.closest_non_simplex = r.vp;
        }
      }
    }
    if (progress) {
      progress(CampaignProgress{end, rep.min_vp, static_cast<int>(rep.violations.size())});
    }
  }
  return rep;
}

Vector ball_point(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  Vector g(d);
  for (int i = 0; i < d; ++i) g[i] = normal(rng);
  return g.normalized() * std::pow(uniform(rng), 1.0 / d);
}

// Smallest distance of a polygon vertex to the line through its neighbours.
double polygon_margin(const Polytope& p) {
  const PointList& v = p.vertices();
  const int n = static_cast<int>(v.size());
  // Boundary edges give the cyclic order.
  std::vector<std::vector<int>> adj(n);
  for (const BoundarySimplex& s : p.boundary()) {
    adj[s.vertex[0]].push_back(s.vertex[1]);
    adj[s.vertex[1]].push_back(s.vertex[0]);
  }
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (adj[i].size() != 2) return 0.0;
    const Vector a = v[adj[i][0]];
    const Vector b = v[adj[i][1]];
    const Vector e = (b - a).normalized();
    const Vector w = v[i] - a;
    margin = std::min(margin, std::abs(w[0] * e[1] - w[1] * e[0]));
  }
  return margin / p.scale();
}

}  // namespace

Polytope campaign_sample(int d, int k, uint64_t seed, int index, long* rejected) {
  if (d < 2 || d > 4) fail(ErrorCode::kUnsupportedDimension, "campaign: d must be 2, 3 or 4");
  if (k < d + 1 || k > d + 3) fail(ErrorCode::kInvalidArgument, "campaign: need d+1 <= k <= d+3");
  std::mt19937_64 rng = trial_rng(seed, index);
  long misses = 0;
  while (misses < kMaxDraws) {
    PointList pts;
    for (int i = 0; i < k; ++i) pts.push_back(ball_point(rng, d));
    try {
      Polytope p = Polytope::hull(pts);
      if (static_cast<int>(p.vertex_count()) == k &&
          classify(p).margin > kMarginFactor * kGeomTol) {
        if (rejected) *rejected = misses;
        return p;
      }
    } catch (const GeometryError&) {
    }
    ++misses;
  }
  fail(ErrorCode::kGeometryInconsistent, "campaign: sampler found no admissible polytope");
}

Polytope polygon_sample(uint64_t seed, int index) {
  std::mt19937_64 rng = trial_rng(seed, index);
  std::uniform_int_distribution<int> count(3, 12);
  std::uniform_real_distribution<double> uniform;
  std::bernoulli_distribution coin;
  const int n = count(rng);
  for (long attempt = 0; attempt < kMaxDraws; ++attempt) {
    // Valtr's construction: random edge vectors sorted by angle.
    auto components = [&] {
      std::vector<double> c(n);
      for (double& x : c) x = uniform(rng);
      std::sort(c.begin(), c.end());
      std::vector<double> out;
      double last_a = c.front();
      double last_b = c.front();
      for (int i = 1; i + 1 < n; ++i) {
        if (coin(rng)) {
          out.push_back(c[i] - last_a);
          last_a = c[i];
        } else {
          out.push_back(last_b - c[i]);
          last_b = c[i];
        }
      }
      out.push_back(c.back() - last_a);
      out.push_back(last_b - c.back());
      return out;
    };
    const std::vector<double> xs = components();
    std::vector<double> ys = components();
    std::shuffle(ys.begin(), ys.end(), rng);
    std::vector<Vector> edges;
    for (int i = 0; i < n; ++i) edges.push_back(make_vector({xs[i], ys[i]}));
    std::sort(edges.begin(), edges.end(), [](const Vector& a, const Vector& b) {
      return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
    });
    PointList pts;
    Vector at = Vector::Zero(2);
    for (const Vector& e : edges) {
      pts.push_back(at);
      at += e;
    }
    try {
      Polytope p = Polytope::hull(pts);
      if (static_cast<int>(p.vertex_count()) == n &&
          polygon_margin(p) > kMarginFactor * kGeomTol) {
        return p;
      }
    } catch (const GeometryError&) {
    }
  }
  fail(ErrorCode::kGeometryInconsistent, "campaign: polygon sampler failed");
}

CampaignReport verify_theorem_B(int d, int k, int trials, uint64_t seed,
                                const ProgressCallback& progress, int threads) {
  if (d < 2 || d > 4) fail(ErrorCode::kUnsupportedDimension, "campaign: d must be 2, 3 or 4");
  if (k < d + 1 || k > d + 3) fail(ErrorCode::kInvalidArgument, "campaign: need d+1 <= k <= d+3");
  return run_campaign(d, k, trials, seed, simplex_bound(d), progress, threads, [&](int i) {
    long rejected = 0;
    const Polytope p = campaign_sample(d, k, seed, i, &rejected);
    return evaluate(p, case_label_name(classify(p).label), rejected);
  });
}

CampaignReport verify_theorem_D_2d(int trials, uint64_t seed, const ProgressCallback& progress,
                                   int threads) {
  CampaignReport rep = run_campaign(2, 0, trials, seed, simplex_bound(2), progress, threads, [&](int i) {
    const Polytope p = polygon_sample(seed, i);
    const int n = static_cast<int>(p.vertex_count());
    std::string label = n <= 5 ? case_label_name(classify(p).label) : "POLYGON_" + std::to_string(n);
    return evaluate(p, std::move(label), 0);
  });
  if (std::isfinite(rep.closest_non_simplex) && std::abs(rep.closest_non_simplex - rep.bound) <= 1e-4) {
    rep.violations.push_back(CampaignViolation{-1, rep.closest_non_simplex, {},
                                               "non-simplex within 1e-4 of the bound"});
  }
  return rep;
}

double PiecewiseLinear::operator()(double at) const {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const size_t i = std::upper_bound(x.begin(), x.end(), at) - x.begin();
  const double w = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return (1 - w) * y[i - 1] + w * y[i];
}

double PiecewiseLinear::left_slope(double at) const {
  size_t i = std::lower_bound(x.begin(), x.end(), at) - x.begin();
  i = std::clamp<size_t>(i, 1, x.size() - 1);
  return (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool proportional(const std::vector<double>& part, const std::vector<double>& whole) {
  double pw = 0.0, ww = 0.0;
  for (size_t i = 0; i < part.size(); ++i) {
    pw += part[i] * whole[i];
    ww += whole[i] * whole[i];
  }
  const double c = ww > 0 ? pw / ww : 0.0;
  const double top = std::max(max_abs(whole), max_abs(part));
  if (c < -1e-9) return false;
  for (size_t i = 0; i < part.size(); ++i) {
    if (std::abs(part[i] - c * whole[i]) > 1e-9 * top) return false;
  }
  return true;
}

}  // namespace

bool in_cone(const PiecewiseLinear& f, double tol) {
  if (f.x.size() < 2 || f.x.size() != f.y.size()) return false;
  for (size_t i = 1; i < f.x.size(); ++i) {
    if (!(f.x[i] > f.x[i - 1])) return false;
  }
  const double top = std::max(max_abs(f.y), std::numeric_limits<double>::min());
  const double band = tol * top;
  if (std::abs(f.y.front()) > band || std::abs(f.y.back()) > band) return false;
  for (size_t i = 1; i + 1 < f.x.size(); ++i) {
    const double chord = ((f.x[i + 1] - f.x[i]) * f.y[i - 1] + (f.x[i] - f.x[i - 1]) * f.y[i + 1]) /
                         (f.x[i + 1] - f.x[i - 1]);
    if (f.y[i] < chord - band) return false;
  }
  return true;
}

ConeSplit extreme_ray_decompose(const PiecewiseLinear& f, double a, double tol) {
  if (!in_cone(f, tol)) fail(ErrorCode::kNotInCone, "extreme_ray_decompose: f is not in the cone");
  const double alpha = f.x.front();
  const double beta = f.x.back();
  if (!(a > alpha && a < beta)) {
    fail(ErrorCode::kInvalidArgument, "extreme_ray_decompose: a must be interior");
  }
  const double len = beta - alpha;
  const double ua = (a - alpha) / len;
  const double fa = f(a);
  const double slope = f.left_slope(a) * len;
  const double lead = fa + (1.0 - ua) * slope;
  const double tail = fa - ua * slope;

  std::vector<double> xs = f.x;
  if (std::find(xs.begin(), xs.end(), a) == xs.end()) {
    xs.insert(std::upper_bound(xs.begin(), xs.end(), a), a);
  }
  ConeSplit out;
  out.g.x = xs;
  out.h.x = xs;
  std::vector<double> fv;
  for (double x : xs) {
    const double u = (x - alpha) / len;
    const double fx = f(x);
    const double gx = u <= ua ? fx - u * lead : (1.0 - u) * tail;
    fv.push_back(fx);
    out.g.y.push_back(gx);
    out.h.y.push_back(fx - gx);
  }
  out.g_proportional = proportional(out.g.y, fv);
  out.h_proportional = proportional(out.h.y, fv);
  return out;
}

}  // namespace santalo

#include "realdyn/julia.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <sstream>

namespace realdyn {

static constexpr double kDedupTol = 1e-9;

const char* JuliaShape::kind_name() const {
  switch (kind) {
    case Kind::Cantor: return "Cantor";
    case Kind::Interval: return "Interval";
    case Kind::Circle: return "Circle";
    case Kind::Mixed: return "Mixed";
    case Kind::Unknown: return "Unknown";
  }
  return "?";
}

// repelling fixed or period-2 seed with the largest multiplier
static bool find_repelling_seed(const RealRationalMap& f, CirclePoint* seed,
                                double* multiplier) {
  double best = 1.0 + 1e-9;
  bool found = false;
  for (const auto& [p, m] : fixed_points_real(f)) {
    if (std::fabs(m) > best) {
      best = std::fabs(m);
      *seed = p;
      *multiplier = m;
      found = true;
    }
  }
  if (found) return true;
  RealRationalMap f2 = compose(f, f);
  for (const auto& [p, m] : fixed_points_real(f2)) {
    if (std::fabs(m) > best) {
      best = std::fabs(m);
      *seed = p;
      *multiplier = m;
      found = true;
    }
  }
  return found;
}

RealJuliaSample sample_real_julia(const RealRationalMap& f, int depth,
                                  const EntropyOptions& opts) {
  RealJuliaSample out;
  out.depth = depth;
  if (!find_repelling_seed(f, &out.seed, &out.seed_multiplier))
    throw NoRealRepeller("no real repelling point of period <= 2");
  std::set<double> seen;  // angles
  auto contains = [&](double a) {
    auto it = seen.lower_bound(a - kDedupTol);
    if (it != seen.end() && std::fabs(*it - a) < kDedupTol) return true;
    if (a < kDedupTol && !seen.empty() && 1.0 - *seen.rbegin() + a < kDedupTol) return true;
    if (a > 1 - kDedupTol && !seen.empty() && 1.0 - a + *seen.begin() < kDedupTol)
      return true;
    return false;
  };
  std::vector<CirclePoint> frontier{out.seed};
  seen.insert(out.seed.angle);
  out.points.push_back(out.seed);
  for (int level = 0; level < depth; ++level) {
    std::vector<CirclePoint> next;
    for (const auto& pt : frontier) {
      for (const auto& [q, mult] : solve_real_preimages(f, pt)) {
        (void)mult;
        if (contains(q.angle)) continue;
        seen.insert(q.angle);
        next.push_back(q);
        out.points.push_back(q);
      }
    }
    if (static_cast<long>(out.points.size()) > opts.budget)
      throw DepthBudgetExceeded("julia sample exceeded the point budget");
    if (next.empty()) break;
    frontier = std::move(next);
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

bool is_maximal_entropy(const RealRationalMap& f, double tol, const EntropyOptions& opts) {
  assert(f.degree() >= 2);
  EntropyEstimate e = lap_entropy(f, 12, opts);
  return e.value >= std::log(static_cast<double>(f.degree())) - tol;
}

namespace {

// arc membership: I is the complement of the open gap (gap_lo, gap_hi)
struct ArcComplement {
  double gap_lo, gap_hi;  // angles, gap runs forward from gap_lo to gap_hi
  double gap_len() const {
    double g = gap_hi - gap_lo;
    return g >= 0 ? g : g + 1;
  }
  // signed distance of t into the gap (0 when t is in I)
  double dist_into_gap(double t) const {
    double off = t - gap_lo;
    off -= std::floor(off);
    double len = gap_len();
    if (off <= 0 || off >= len) return 0;
    return std::min(off, len - off);
  }
  bool in_I(double t, double margin) const { return dist_into_gap(t) <= margin; }
};

}  // namespace

JuliaShape classify_maximal(const RealRationalMap& f, const EntropyOptions& opts) {
  const int d = f.degree();
  if (!is_maximal_entropy(f, 0.05, opts))
    throw PreconditionFailed("map is not of maximal real entropy");
  JuliaShape shape;
  auto T = turning_points(f);
  if (T.empty()) {
    int s = topological_degree(f);
    if (std::abs(s) == d) {
      shape.kind = JuliaShape::Kind::Circle;
      shape.evidence = "unramified cover: no real critical points, |s| = d";
      return shape;
    }
  }
  // attracting or parabolic real fixed point
  bool have_p = false;
  CirclePoint p;
  double pmult = 0;
  for (const auto& [q, m] : fixed_points_real(f)) {
    if (std::fabs(m) <= 1 + 1e-9) {
      if (!have_p || std::fabs(m) < std::fabs(pmult)) {
        p = q;
        pmult = m;
        have_p = true;
      }
    }
  }
  if (!have_p) {
    shape.evidence = "no attracting or parabolic real fixed point";
    return shape;
  }
  RealJuliaSample sample = sample_real_julia(f, 12, opts);
  std::vector<CirclePoint> pts = sample.points;
  // A parabolic fixed point lies in the Julia set and its backward orbit
  // reaches the endpoints of the Fatou gap; an interior repelling seed only
  // approaches them at depth-linear speed. Merge the parabolic tree in.
  if (std::fabs(std::fabs(pmult) - 1.0) <= 1e-6) {
    std::vector<CirclePoint> frontier{p};
    std::vector<CirclePoint> extra{p};
    for (int level = 0; level < 12; ++level) {
      std::vector<CirclePoint> next;
      for (const auto& pt : frontier)
        for (const auto& [q, mult2] : solve_real_preimages(f, pt)) {
          (void)mult2;
          bool dup = false;
          for (const auto& e : extra)
            if (chart_dist(e, q) < kDedupTol) { dup = true; break; }
          if (!dup) {
            extra.push_back(q);
            next.push_back(q);
          }
        }
      if (next.empty() || extra.size() > 8192) break;
      frontier = std::move(next);
    }
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const CirclePoint& a, const CirclePoint& b) {
                            return chart_dist(a, b) < kDedupTol;
                          }),
              pts.end());
  }
  if (pts.size() < 8) {
    shape.evidence = "julia sample too small";
    return shape;
  }
  // widest gap whose closure touches the fixed point
  int best = -1;
  double best_len = 0;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    double lo = pts[i].angle;
    double hi = pts[(i + 1) % n].angle;
    double len = hi - lo;
    if (len < 0) len += 1;
    // distance from p to the closed gap [lo, hi]
    double off = p.angle - lo;
    off -= std::floor(off);
    double dist = (off <= len) ? 0 : std::min(off - len, 1 - off);
    if (dist < 1e-7 && len > best_len) {
      best_len = len;
      best = i;
    }
  }
  if (best < 0) {
    shape.evidence = "fixed point is not adjacent to any sample gap";
    return shape;
  }
  ArcComplement I{pts[best].angle, pts[(best + 1) % n].angle};
  shape.interval_lo = I.gap_hi;  // I runs from the gap's end to its start
  shape.interval_hi = I.gap_lo;

  const double tol = 1e-6;
  const int probes = 1000;
  double ilen = 1 - I.gap_len();
  // forward images of I-probes; track the widest contiguous escaping sub-arc
  double esc_width = 0, cur_width = 0;
  for (int i = 0; i < probes; ++i) {
    double t = I.gap_hi + ilen * (i + 0.5) / probes;
    t -= std::floor(t);
    CirclePoint y = f.eval(CirclePoint::from_angle(t));
    if (I.dist_into_gap(y.angle) > tol) {
      cur_width += ilen / probes;
      esc_width = std::max(esc_width, cur_width);
    } else {
      cur_width = 0;
    }
  }
  // gap probes must stay out of I
  int gap_violations = 0;
  for (int i = 0; i < probes; ++i) {
    double t = I.gap_lo + I.gap_len() * (i + 0.5) / probes;
    t -= std::floor(t);
    CirclePoint y = f.eval(CirclePoint::from_angle(t));
    if (I.dist_into_gap(y.angle) == 0 && I.gap_len() > 0) {
      // y claims to be in I; tolerate boundary grazing
      double db = std::min(chart_dist(y.angle, I.gap_lo), chart_dist(y.angle, I.gap_hi));
      if (db > tol) ++gap_violations;
    }
  }
  std::ostringstream ev;
  ev << "escaping width " << esc_width << ", gap violations " << gap_violations
     << ", |I| " << ilen;
  shape.evidence = ev.str();
  if (esc_width == 0 && gap_violations == 0) {
    shape.kind = JuliaShape::Kind::Interval;
  } else if (esc_width > 1e-4) {
    shape.kind = (gap_violations == 0) ? JuliaShape::Kind::Cantor
                                       : JuliaShape::Kind::Mixed;
  } else if (esc_width > 10 * tol) {
    shape.kind = JuliaShape::Kind::Unknown;  // inside the dead zone
  } else {
    shape.kind = (gap_violations == 0) ? JuliaShape::Kind::Interval
                                       : JuliaShape::Kind::Mixed;
  }
  return shape;
}

StructureReport structure_report(const RealRationalMap& f, int depth,
                                 const EntropyOptions& opts) {
  StructureReport rep;
  RealJuliaSample sample;
  try {
    sample = sample_real_julia(f, depth, opts);
  } catch (const NoRealRepeller&) {
    rep.evidence = "no real repelling seed; empty report";
    return rep;
  }
  const auto& pts = sample.points;
  const int n = static_cast<int>(pts.size());
  if (n < 4) {
    rep.cantor_points = n;
    rep.evidence = "sample too small for run detection";
    return rep;
  }
  // adaptive run-splitting threshold: the literal 10 * dedup tolerance is far
  // below feasible sampling resolution, so widen by the observed mean gap
  std::vector<double> gaps(n);
  double total = 0;
  for (int i = 0; i < n; ++i) {
    double g = pts[(i + 1) % n].angle - pts[i].angle;
    if (g < 0) g += 1;
    gaps[i] = g;
    total += g;
  }
  (void)total;  // == 1 by construction
  double mean_gap = 1.0 / n;
  double tau = std::max(10 * kDedupTol, 30 * mean_gap);

  // forward orbits of the real critical points (bounded horizon)
  std::vector<std::vector<double>> crit_orbits;
  for (const auto& [c, mult] : critical_points_real(f)) {
    (void)mult;
    std::vector<double> orbit;
    CirclePoint x = c;
    for (int k = 0; k < 60; ++k) {
      orbit.push_back(x.angle);
      x = f.eval(x);
    }
    crit_orbits.push_back(std::move(orbit));
  }

  // maximal runs of consecutive points with gaps below tau (cyclic)
  std::vector<std::pair<int, int>> runs;  // [start index, length]
  {
    int start = -1;
    for (int i = 0; i < n; ++i)
      if (gaps[i] > tau) { start = (i + 1) % n; break; }
    if (start < 0) {
      runs.push_back({0, n});  // the whole circle is one run
    } else {
      int i = start, len = 1;
      for (int steps = 0; steps < n; ++steps) {
        int j = (start + steps) % n;
        if (gaps[j] > tau) {
          runs.push_back({i, len});
          i = (j + 1) % n;
          len = 1;
        } else {
          ++len;
        }
      }
    }
  }
  auto run_span = [&](const std::pair<int, int>& r) {
    double lo = pts[r.first].angle;
    double hi = pts[(r.first + r.second - 1) % n].angle;
    double len = hi - lo;
    if (len < 0) len += 1;
    return std::make_pair(lo, len);
  };
  auto in_span = [](double lo, double len, double t) {
    double off = t - lo;
    off -= std::floor(off);
    return off <= len + 1e-6;
  };
  for (const auto& r : runs) {
    if (r.second < 16) {
      rep.cantor_points += r.second;
      continue;
    }
    auto [lo, len] = run_span(r);
    bool has_orbit = false;
    for (const auto& orbit : crit_orbits) {
      bool all_in = true;
      for (double a : orbit)
        if (!in_span(lo, len, a)) { all_in = false; break; }
      if (all_in) { has_orbit = true; break; }
    }
    if (has_orbit) {
      ++rep.interval_components;
      rep.intervals.push_back({lo, len});
    } else {
      rep.cantor_points += r.second;
    }
  }
  std::ostringstream ev;
  ev << "runs " << runs.size() << ", tau " << tau << ", interval components "
     << rep.interval_components << " (bound 2d-2 = " << 2 * f.degree() - 2
     << "), totally disconnected points " << rep.cantor_points;
  rep.evidence = ev.str();
  return rep;
}

}  // namespace realdyn

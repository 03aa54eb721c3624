#include "realdyn/entropy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <thread>

#include "realdyn/numroots.hpp"

namespace realdyn {

static constexpr double kDedupTol = 1e-9;

const char* EntropyEstimate::method_name() const {
  switch (method) {
    case Method::lap: return "lap";
    case Method::preimage: return "preimage";
    case Method::kneading: return "kneading";
    case Method::covering: return "covering";
  }
  return "?";
}

EntropyEstimate make_estimate(double value, double lower, double upper, int depth,
                              EntropyEstimate::Method m, int d) {
  double cap = std::log(static_cast<double>(d));
  EntropyEstimate e;
  e.upper = std::clamp(upper, 0.0, cap);
  e.lower = std::clamp(lower, 0.0, e.upper);
  e.value = std::clamp(value, e.lower, e.upper);
  e.depth = depth;
  e.method = m;
  return e;
}

// ---------------- preimages ----------------

std::vector<std::pair<CirclePoint, int>> solve_real_preimages(const RealRationalMap& f,
                                                              const CirclePoint& y) {
  std::vector<CirclePoint> raw;
  int inf_mult = 0;
  const int dp = f.num.degree(), dq = f.den.degree();
  if (y.infinite) {
    for (double r : real_roots(f.den.fv)) raw.push_back(CirclePoint::from_value(r));
    if (dp > dq) inf_mult = dp - dq;
  } else {
    std::vector<double> c(std::max(dp, dq) + 1, 0.0);
    for (int k = 0; k <= dp; ++k) c[k] += f.num.fv[k];
    for (int k = 0; k <= dq; ++k) c[k] -= y.x * f.den.fv[k];
    for (double r : real_roots(c)) raw.push_back(CirclePoint::from_value(r));
    ExactPoint finf = f.value_at_infinity();
    CirclePoint finf_c = finf.inf ? CirclePoint::infinity()
                                  : CirclePoint::from_value(finf.v.get_d());
    if (chart_dist(finf_c, y) < kDedupTol)
      inf_mult = f.local_degree_at(ExactPoint::infinity());
  }
  // cluster at chart tolerance; cluster size = multiplicity
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<CirclePoint, int>> out;
  for (const auto& p : raw) {
    if (!out.empty() && chart_dist(out.back().first, p) < kDedupTol)
      out.back().second += 1;
    else
      out.push_back({p, 1});
  }
  // wrap-around cluster (angles near 0 and near 1)
  if (out.size() >= 2 && chart_dist(out.front().first, out.back().first) < kDedupTol) {
    out.front().second += out.back().second;
    out.pop_back();
  }
  if (inf_mult > 0) {
    if (!out.empty() && out.front().first.infinite)
      out.front().second += inf_mult;
    else if (!out.empty() && (chart_dist(out.front().first, CirclePoint::infinity()) < kDedupTol ||
                              chart_dist(out.back().first, CirclePoint::infinity()) < kDedupTol)) {
      // merge a straggler finite root hugging the chart origin into infinity
      if (chart_dist(out.front().first, CirclePoint::infinity()) < kDedupTol) {
        out.front() = {CirclePoint::infinity(), out.front().second + inf_mult};
      } else {
        int m = out.back().second;
        out.pop_back();
        out.insert(out.begin(), {CirclePoint::infinity(), m + inf_mult});
      }
    } else {
      out.insert(out.begin(), {CirclePoint::infinity(), inf_mult});
    }
  }
  return out;
}

std::vector<CirclePoint> turning_points(const RealRationalMap& f) {
  std::vector<CirclePoint> out;
  for (const auto& [p, mult] : critical_points_real(f))
    if (mult % 2 == 1) out.push_back(p);  // odd W-order <=> even local degree <=> fold
  return out;
}

// ---------------- backward trees ----------------

namespace {

struct AngleSet {
  std::set<double> s;
  bool contains(double a) const {
    auto it = s.lower_bound(a - kDedupTol);
    if (it != s.end() && std::fabs(*it - a) < kDedupTol) return true;
    // cyclic wrap
    if (a < kDedupTol && !s.empty() && *s.rbegin() > 1.0 - kDedupTol &&
        (1.0 - *s.rbegin()) + a < kDedupTol)
      return true;
    if (a > 1.0 - kDedupTol && !s.empty() && *s.begin() < kDedupTol &&
        (1.0 - a) + *s.begin() < kDedupTol)
      return true;
    return false;
  }
  void insert(double a) { s.insert(a); }
  size_t size() const { return s.size(); }
};

// expand one level; returns deduped (point, weight) pairs, weights summed on merge
std::vector<std::pair<CirclePoint, long>> expand_level(
    const RealRationalMap& f, const std::vector<std::pair<CirclePoint, long>>& frontier,
    int threads) {
  std::vector<std::pair<CirclePoint, long>> got;
  auto work = [&](size_t lo, size_t hi, std::vector<std::pair<CirclePoint, long>>& sink) {
    for (size_t i = lo; i < hi; ++i) {
      const auto& [pt, w] = frontier[i];
      for (const auto& [q, m] : solve_real_preimages(f, pt))
        sink.push_back({q, w * m});
    }
  };
  if (threads <= 1 || frontier.size() < 64) {
    work(0, frontier.size(), got);
  } else {
    size_t n = frontier.size();
    size_t nt = std::min<size_t>(threads, 8);
    std::vector<std::vector<std::pair<CirclePoint, long>>> parts(nt);
    std::vector<std::thread> pool;
    for (size_t t = 0; t < nt; ++t)
      pool.emplace_back(work, n * t / nt, n * (t + 1) / nt, std::ref(parts[t]));
    for (auto& th : pool) th.join();
    for (auto& p : parts) got.insert(got.end(), p.begin(), p.end());
  }
  std::sort(got.begin(), got.end(),
            [](const auto& a, const auto& b) { return a.first.angle < b.first.angle; });
  std::vector<std::pair<CirclePoint, long>> out;
  for (const auto& pw : got) {
    if (!out.empty() && chart_dist(out.back().first, pw.first) < kDedupTol)
      out.back().second += pw.second;
    else
      out.push_back(pw);
  }
  if (out.size() >= 2 && chart_dist(out.front().first, out.back().first) < kDedupTol) {
    out.front().second += out.back().second;
    out.pop_back();
  }
  return out;
}

}  // namespace

PreimageTree build_preimage_tree(const RealRationalMap& f, const CirclePoint& x, int N,
                                 const EntropyOptions& opts, bool* budget_hit) {
  PreimageTree tree;
  tree.root = x;
  if (budget_hit) *budget_hit = false;
  std::vector<std::pair<CirclePoint, long>> frontier{{x, 1}};
  long total = 1;
  for (int n = 1; n <= N; ++n) {
    auto next = expand_level(f, frontier, opts.threads);
    total += static_cast<long>(next.size());
    if (total > opts.budget) {
      if (budget_hit) *budget_hit = true;
      break;
    }
    // slope fits use distinct solutions: multiplicity counting is only sound
    // without post-critical relations, and a critical fixed point in the tree
    // (z^2 + c at infinity, say) would inflate the count exponentially
    tree.levels.push_back(next);
    tree.counts.push_back(static_cast<long>(next.size()));
    if (next.empty()) break;
    frontier = std::move(next);
  }
  return tree;
}

static std::vector<long> lap_counts_impl(const RealRationalMap& f, int N,
                                         const EntropyOptions& opts, bool* budget_hit) {
  auto T = turning_points(f);
  assert(!T.empty() && "lap counting requires a turning point; coverings take the fallback");
  if (budget_hit) *budget_hit = false;
  AngleSet seen;
  std::vector<std::pair<CirclePoint, long>> frontier;
  for (const auto& c : T) {
    if (!seen.contains(c.angle)) {
      seen.insert(c.angle);
      frontier.push_back({c, 1});
    }
  }
  std::vector<long> l{static_cast<long>(seen.size())};
  for (int n = 2; n <= N; ++n) {
    auto next = expand_level(f, frontier, opts.threads);
    if (static_cast<long>(seen.size() + next.size()) > opts.budget) {
      if (budget_hit) *budget_hit = true;
      break;
    }
    std::vector<std::pair<CirclePoint, long>> fresh;
    for (const auto& [p, w] : next) {
      (void)w;
      if (!seen.contains(p.angle)) {
        seen.insert(p.angle);
        fresh.push_back({p, 1});
      }
    }
    l.push_back(static_cast<long>(seen.size()));
    frontier = std::move(fresh);
    if (frontier.empty()) {
      // preperiodic turning structure: union saturates, lap count stays flat
      while (static_cast<int>(l.size()) < N) l.push_back(l.back());
      break;
    }
  }
  return l;
}

std::vector<long> lap_counts(const RealRationalMap& f, int N, const EntropyOptions& opts) {
  assert(N >= 1 && N <= 16);
  bool hit = false;
  auto l = lap_counts_impl(f, N, opts, &hit);
  if (hit)
    throw DepthBudgetExceeded("lap tree exceeded " + std::to_string(opts.budget) +
                              " points at depth " + std::to_string(l.size() + 1));
  return l;
}

double fit_growth_rate(const std::vector<long>& counts) {
  const int n = static_cast<int>(counts.size());
  if (n == 0) return 0;
  int w = (n + 1) / 2;
  int from = n - w;  // use depths from+1 .. n (1-based)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (int i = from; i < n; ++i) {
    double xx = i + 1;
    double yy = std::log(std::max<long>(counts[i], 1));
    sx += xx;
    sy += yy;
    sxx += xx * xx;
    sxy += xx * yy;
    ++k;
  }
  if (k < 2) return 0;
  double denom = k * sxx - sx * sx;
  if (denom == 0) return 0;
  return std::max(0.0, (k * sxy - sx * sy) / denom);
}

EntropyEstimate lap_entropy(const RealRationalMap& f, int N, const EntropyOptions& opts) {
  const int d = f.degree();
  assert(d >= 2);
  auto T = turning_points(f);
  if (T.empty()) {
    int s = topological_degree(f);
    double h = std::log(std::max(std::abs(s), 1));
    return make_estimate(h, h, h, 0, EntropyEstimate::Method::covering, d);
  }
  // half the budget to the union tree, half to the per-turning-point trees;
  // depth degrades gracefully when the budget binds
  EntropyOptions half = opts;
  half.budget = opts.budget / 2;
  bool hit = false;
  std::vector<long> l = lap_counts_impl(f, N, half, &hit);
  if (static_cast<int>(l.size()) < 3)
    throw DepthBudgetExceeded("lap tree too shallow within budget");
  int N_eff = static_cast<int>(l.size());
  double upper = 1e300;
  for (size_t i = 0; i < l.size(); ++i)
    upper = std::min(upper, (std::log(static_cast<double>(l[i])) + std::log(2.0)) /
                                static_cast<double>(i + 1));
  EntropyOptions per = opts;
  per.budget = std::max<long>(1024, (opts.budget / 2) / static_cast<long>(T.size()));
  double lower = 0;
  int depth_used = static_cast<int>(l.size());
  for (const auto& c : T) {
    bool chit = false;
    PreimageTree tree = build_preimage_tree(f, c, N_eff, per, &chit);
    lower = std::max(lower, fit_growth_rate(tree.counts));
    depth_used = std::max(depth_used, static_cast<int>(tree.counts.size()));
  }
  return make_estimate(lower, lower, upper, depth_used, EntropyEstimate::Method::lap, d);
}

EntropyEstimate preimage_growth_entropy(const RealRationalMap& f, const CirclePoint& x,
                                        int N, const EntropyOptions& opts) {
  const int d = f.degree();
  assert(d >= 2);
  bool hit = false;
  PreimageTree tree = build_preimage_tree(f, x, N, opts, &hit);
  if (static_cast<int>(tree.counts.size()) < 3)
    throw DepthBudgetExceeded("preimage tree too shallow within budget");
  double slope = fit_growth_rate(tree.counts);
  return make_estimate(slope, slope, std::log(static_cast<double>(d)),
                       static_cast<int>(tree.counts.size()),
                       EntropyEstimate::Method::preimage, d);
}

// ---------------- rotation number ----------------

double rotation_number(const RealRationalMap& f, long N) {
  if (!turning_points(f).empty())
    throw NotACircleHomeo("map has turning points");
  if (topological_degree(f) != 1)
    throw NotACircleHomeo("circle degree is not +1");
  // the unique wrap point: the one real preimage of infinity
  std::vector<CirclePoint> poles;
  for (double r : real_roots(f.den.fv)) poles.push_back(CirclePoint::from_value(r));
  if (f.num.degree() > f.den.degree()) poles.push_back(CirclePoint::infinity());
  // dedup (a multiple pole cannot occur for a homeomorphism)
  std::sort(poles.begin(), poles.end());
  poles.erase(std::unique(poles.begin(), poles.end(),
                          [](const CirclePoint& a, const CirclePoint& b) {
                            return chart_dist(a, b) < kDedupTol;
                          }),
              poles.end());
  if (poles.size() != 1) throw NotACircleHomeo("not exactly one real pole");
  const double tstar = poles[0].angle;
  double t = 0.25, S = 0;
  for (long k = 0; k < N; ++k) {
    CirclePoint y = f.eval(CirclePoint::from_angle(t));
    double phi = y.angle;
    // the lift increments by 1 from the wrap point on; >= so that an orbit
    // landing exactly on the pole takes the upper branch (phi wrapped to 0)
    double F = phi + ((t >= tstar) ? 1.0 : 0.0);
    S += F - t;
    t = phi;
  }
  double rho = S / static_cast<double>(N);
  rho -= std::floor(rho);
  return rho;
}

}  // namespace realdyn

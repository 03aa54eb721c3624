#include "realdyn/qpoly.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

#include "realdyn/errors.hpp"

namespace realdyn {

// ---------------- Rat parsing ----------------

Rat rat_from_string(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw SyntaxError(0, "empty number");
  // a/b handled by GMP directly
  if (t.find('/') != std::string::npos) {
    Rat q(t);
    q.canonicalize();
    return q;
  }
  // decimal / scientific: mantissa [.fraction] [e exp]
  std::string mant = t;
  long expo = 0;
  auto epos = t.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = t.substr(0, epos);
    expo = std::strtol(t.c_str() + epos + 1, nullptr, 10);
  }
  std::string digits = mant;
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    expo -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || digits == "-" || digits == "+")
    throw SyntaxError(0, "malformed number '" + s + "'");
  Rat q{Int(digits, 10)};  // explicit base; leading zeros are not octal
  if (expo > 0)
    q *= rat_pow(Rat(10), static_cast<unsigned long>(expo));
  else if (expo < 0)
    q /= rat_pow(Rat(10), static_cast<unsigned long>(-expo));
  q.canonicalize();
  return q;
}

// ---------------- ZPoly ----------------

ZPoly ZPoly::constant(long v) {
  ZPoly p;
  if (v != 0) p.c = {Int(v)};
  return p;
}

void ZPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Int ZPoly::eval(const Int& x) const {
  Int r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

Rat ZPoly::eval(const Rat& x) const {
  Rat r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

double ZPoly::eval(double x) const {
  double r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + it->get_d();
  return r;
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& v : r.c) v = -v;
  return r;
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  ZPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), Int(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  r.trim();
  return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

ZPoly ZPoly::operator*(const ZPoly& o) const {
  if (is_zero() || o.is_zero()) return ZPoly();
  ZPoly r;
  r.c.assign(c.size() + o.c.size() - 1, Int(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  }
  r.trim();
  return r;
}

ZPoly ZPoly::shift_scale(const Int& m, int k) const {
  if (is_zero() || m == 0) return ZPoly();
  ZPoly r;
  r.c.assign(c.size() + k, Int(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i] * m;
  return r;
}

Int ZPoly::content() const {
  Int g(0);
  for (const auto& v : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (!c.empty() && sgn(c.back()) < 0) g = -g;
  return g;
}

ZPoly ZPoly::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  ZPoly r = *this;
  for (auto& v : r.c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return r;
}

ZPoly ZPoly::derivative() const {
  ZPoly r;
  if (c.size() <= 1) return r;
  r.c.resize(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * Int(static_cast<long>(i));
  r.trim();
  return r;
}

// Primitive PRS gcd. Coefficient growth is tamed by dividing out content at
// every step; good enough at the degrees this project sees.
ZPoly zpoly_gcd(ZPoly a, ZPoly b) {
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    // pseudo-remainder of a by b
    ZPoly r = a;
    const Int lb = b.lead();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int k = r.degree() - b.degree();
      Int lr = r.lead();
      // r := lb * r - lr * x^k * b
      ZPoly rb = b.shift_scale(lr, k);
      ZPoly rs;
      rs.c.resize(r.c.size(), Int(0));
      for (size_t i = 0; i < r.c.size(); ++i) rs.c[i] = r.c[i] * lb;
      r = ZPoly(std::move(rs.c)) - rb;
    }
    a = b;
    b = r.primitive_part();
  }
  return a.primitive_part();
}

ZPoly zpoly_divexact(const ZPoly& a, const ZPoly& b) {
  assert(!b.is_zero());
  if (a.is_zero()) return ZPoly();
  assert(a.degree() >= b.degree());
  std::vector<Int> q(a.degree() - b.degree() + 1, Int(0));
  ZPoly r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    Int qk;
    mpz_divexact(qk.get_mpz_t(), r.lead().get_mpz_t(), b.lead().get_mpz_t());
    q[k] = qk;
    r = r - b.shift_scale(qk, k);
  }
  assert(r.is_zero() && "zpoly_divexact: not divisible");
  return ZPoly(std::move(q));
}

// ---------------- QPoly ----------------

QPoly QPoly::constant(const Rat& v) {
  QPoly p;
  if (v != 0) p.c = {v};
  return p;
}

QPoly QPoly::x() { return QPoly({Rat(0), Rat(1)}); }

void QPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat QPoly::eval(const Rat& x) const {
  Rat r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

double QPoly::eval(double x) const {
  double r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + it->get_d();
  return r;
}

std::vector<double> QPoly::dcoeffs() const {
  std::vector<double> d(c.size());
  for (size_t i = 0; i < c.size(); ++i) d[i] = c[i].get_d();
  return d;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& v : r.c) v = -v;
  return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
  QPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  r.trim();
  return r;
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  QPoly r;
  r.c.assign(c.size() + o.c.size() - 1, Rat(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  }
  r.trim();
  return r;
}

QPoly QPoly::operator*(const Rat& s) const {
  if (s == 0) return QPoly();
  QPoly r = *this;
  for (auto& v : r.c) v *= s;
  return r;
}

QPoly QPoly::derivative() const {
  QPoly r;
  if (c.size() <= 1) return r;
  r.c.resize(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * Rat(static_cast<long>(i));
  r.trim();
  return r;
}

QPoly QPoly::compose(const QPoly& g) const {
  QPoly r;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * g + QPoly::constant(*it);
  return r;
}

QPoly QPoly::reverse(int n) const {
  assert(n >= degree());
  QPoly r;
  r.c.assign(n + 1, Rat(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[n - i] = c[i];
  r.trim();
  return r;
}

QPoly QPoly::flip() const {
  QPoly r = *this;
  for (size_t i = 1; i < r.c.size(); i += 2) r.c[i] = -r.c[i];
  return r;
}

ZPoly QPoly::primitive_z(Rat* content) const {
  if (is_zero()) {
    if (content) *content = 0;
    return ZPoly();
  }
  Int den(1);
  for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  ZPoly z;
  z.c.resize(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    Rat scaled = c[i] * Rat(den);
    assert(scaled.get_den() == 1);
    z.c[i] = scaled.get_num();
  }
  Int g = z.content();
  z = z.primitive_part();
  if (content) *content = Rat(g) / Rat(den);
  return z;
}

QPoly QPoly::from_z(const ZPoly& z) {
  QPoly p;
  p.c.resize(z.c.size());
  for (size_t i = 0; i < z.c.size(); ++i) p.c[i] = Rat(z.c[i]);
  return p;
}

std::pair<QPoly, QPoly> qpoly_divrem(const QPoly& a, const QPoly& b) {
  assert(!b.is_zero());
  QPoly q, r = a;
  if (a.degree() >= b.degree()) q.c.assign(a.degree() - b.degree() + 1, Rat(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    Rat s = r.lead() / b.lead();
    q.c[k] = s;
    QPoly sb;
    sb.c.assign(b.c.size() + k, Rat(0));
    for (size_t i = 0; i < b.c.size(); ++i) sb.c[i + k] = b.c[i] * s;
    sb.trim();
    r = r - sb;
  }
  q.trim();
  return {q, r};
}

QPoly qpoly_gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero() && b.is_zero()) return QPoly();
  ZPoly g = zpoly_gcd(a.primitive_z(), b.primitive_z());
  QPoly q = QPoly::from_z(g);
  if (!q.is_zero()) {
    Rat inv = Rat(1) / q.lead();
    q = q * inv;  // monic
  }
  return q;
}

QPoly qpoly_divexact(const QPoly& a, const QPoly& b) {
  auto [q, r] = qpoly_divrem(a, b);
  assert(r.is_zero() && "qpoly_divexact: not divisible");
  return q;
}

// Fraction-free Gaussian elimination (Bareiss) on the Sylvester matrix of the
// primitive integer models, then rescale to the true rational resultant.
Rat resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  const int m = a.degree(), n = b.degree();
  if (m == 0) return rat_pow(a.c[0], static_cast<unsigned long>(n));
  if (n == 0) return rat_pow(b.c[0], static_cast<unsigned long>(m));
  Rat ca, cb;
  ZPoly A = a.primitive_z(&ca), B = b.primitive_z(&cb);
  const int N = m + n;
  std::vector<std::vector<Int>> M(N, std::vector<Int>(N, Int(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = A.c[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = B.c[n - j];
  Int denom(1);
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < N; ++i)
        if (M[i][k] != 0) { piv = i; break; }
      if (piv < 0) return Rat(0);
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        Int t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), denom.get_mpz_t());
      }
      M[i][k] = 0;
    }
    denom = M[k][k];
  }
  Rat det(M[N - 1][N - 1]);
  if (sign < 0) det = -det;
  return det * rat_pow(ca, static_cast<unsigned long>(n)) *
         rat_pow(cb, static_cast<unsigned long>(m));
}

std::vector<QPoly> squarefree_decomposition(const QPoly& p) {
  std::vector<QPoly> out;
  if (p.degree() <= 0) return out;
  // Yun's algorithm
  QPoly a = p * (Rat(1) / p.lead());
  QPoly da = a.derivative();
  QPoly g = qpoly_gcd(a, da);
  if (g.degree() == 0) {
    out.push_back(a);
    return out;
  }
  QPoly w = qpoly_divexact(a, g);
  QPoly y = qpoly_divexact(da, g);
  while (true) {
    QPoly z = y - w.derivative();
    if (z.is_zero()) {
      out.push_back(w);
      break;
    }
    g = qpoly_gcd(w, z);
    out.push_back(g);
    w = qpoly_divexact(w, g);
    y = qpoly_divexact(z, g);
  }
  return out;
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p;
  QPoly g = qpoly_gcd(p, p.derivative());
  if (g.degree() == 0) return p;
  return qpoly_divexact(p, g);
}

// ---------------- Sturm ----------------

SturmChain::SturmChain(const QPoly& p) {
  QPoly f = p;
  {
    QPoly g = qpoly_gcd(f, f.derivative());
    if (g.degree() > 0) f = qpoly_divexact(f, g);
  }
  if (f.is_zero()) return;
  seq.push_back(f);
  if (f.degree() == 0) return;
  seq.push_back(f.derivative());
  while (seq.back().degree() > 0) {
    auto [q, r] = qpoly_divrem(seq[seq.size() - 2], seq.back());
    (void)q;
    if (r.is_zero()) break;
    // rescale to the primitive model to keep numbers small; only signs matter
    Rat content;
    ZPoly rz = r.primitive_z(&content);
    QPoly rp = QPoly::from_z(rz);
    if (content < 0) rp = -rp;
    seq.push_back(-rp);
  }
}

static int sgn_rat(const Rat& q) { return sgn(q); }

int SturmChain::sign_changes_at(const Rat& x) const {
  int changes = 0, prev = 0;
  for (const auto& p : seq) {
    int s = sgn_rat(p.eval(x));
    if (s != 0) {
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
  }
  return changes;
}

int SturmChain::sign_changes_at_minus_inf() const {
  int changes = 0, prev = 0;
  for (const auto& p : seq) {
    if (p.is_zero()) continue;
    int s = sgn_rat(p.lead());
    if (p.degree() % 2 == 1) s = -s;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int SturmChain::sign_changes_at_plus_inf() const {
  int changes = 0, prev = 0;
  for (const auto& p : seq) {
    if (p.is_zero()) continue;
    int s = sgn_rat(p.lead());
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int SturmChain::count_roots(const Rat& a, const Rat& b) const {
  if (seq.empty()) return 0;
  return sign_changes_at(a) - sign_changes_at(b);
}

int SturmChain::count_real_roots() const {
  if (seq.empty()) return 0;
  return sign_changes_at_minus_inf() - sign_changes_at_plus_inf();
}

// Cauchy-style bound on the magnitude of real roots.
static Rat root_bound(const QPoly& p) {
  Rat m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rat a = abs(p.c[i] / p.lead());
    if (a > m) m = a;
  }
  return m + 1;
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& p) {
  std::vector<std::pair<Rat, Rat>> out;
  if (p.degree() <= 0) return out;
  SturmChain ch(p);
  Rat B = root_bound(p);
  struct Seg { Rat a, b; int n; };
  int total = ch.count_roots(-B, B);
  if (total == 0) return out;
  std::vector<Seg> stack{{-B, B, total}};
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.n == 0) continue;
    if (s.n == 1) {
      out.push_back({s.a, s.b});
      continue;
    }
    Rat mid = (s.a + s.b) / 2;
    int left = ch.count_roots(s.a, mid);
    stack.push_back({s.a, mid, left});
    stack.push_back({mid, s.b, s.n - left});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& u, const auto& v) { return u.first < v.first; });
  return out;
}

std::pair<Rat, Rat> refine_root(const QPoly& p, Rat lo, Rat hi, const Rat& width) {
  // invariant: exactly one root of the square-free part in (lo, hi]
  SturmChain ch(p);
  while (hi - lo > width) {
    Rat mid = (lo + hi) / 2;
    if (ch.count_roots(lo, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

double polish_root_exact(const QPoly& p, double x0, int iters) {
  QPoly dp = p.derivative();
  double x = x0;
  for (int it = 0; it < iters; ++it) {
    if (!std::isfinite(x)) return x0;
    double num = p.eval(rat_from_double(x)).get_d();  // exact residual
    double den = dp.eval(x);
    if (den == 0) break;
    double step = num / den;
    if (!std::isfinite(step) || std::fabs(step) > 1 + std::fabs(x)) break;
    x -= step;
  }
  return x;
}

std::optional<std::pair<Rat, Rat>> smallest_root_in(const QPoly& p, const Rat& a,
                                                    const Rat& b, const Rat& width) {
  if (p.degree() <= 0) return std::nullopt;
  SturmChain ch(p);
  // (a, b) open: shave the right endpoint if it is a root
  Rat hi = b;
  if (p.eval(b) == 0) {
    // pull hi just below b, keeping all interior roots
    Rat step = (b - a) / 2;
    while (ch.count_roots(a, b - step) != ch.count_roots(a, b) - 1) step /= 2;
    hi = b - step;
  }
  int n = ch.count_roots(a, hi);
  if (n == 0) return std::nullopt;
  Rat lo = a;
  // find the leftmost root: bisect until exactly one root remains on the left
  Rat l = a, r = hi;
  while (ch.count_roots(l, r) > 1) {
    Rat mid = (l + r) / 2;
    if (ch.count_roots(l, mid) >= 1)
      r = mid;
    else
      l = mid;
  }
  (void)lo;
  return refine_root(p, l, r, width);
}

}  // namespace realdyn

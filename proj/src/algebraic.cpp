#include "ddeg/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ddeg/errors.hpp"

namespace ddeg {

namespace {

int sign_int_poly(const IntPolynomial& p, const mpq_class& t) {
  // Horner on numerator/denominator separately to stay in integers
  const mpz_class& n = t.get_num();
  const mpz_class& d = t.get_den();
  mpz_class acc = 0, dp = 1;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = acc * n + *it * dp;
    dp *= d;
  }
  return sgn(acc);
}

void isolate_rec(const std::vector<QPoly>& seq, const IntPolynomial& ip, const QPoly& sp, const mpq_class& lo,
                 const mpq_class& hi, int count, std::vector<RealAlgebraic>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.emplace_back(ip, lo, hi);
    return;
  }
  mpq_class w = hi - lo;
  mpq_class mid = (lo + hi) / 2;
  mpq_class step = w / 8;
  while (sp.sign_at(mid) == 0) {
    mid += step;
    step /= 2;
  }
  int left = count_roots(seq, lo, mid);
  isolate_rec(seq, ip, sp, lo, mid, left, out);
  isolate_rec(seq, ip, sp, mid, hi, count - left, out);
}

struct QInterval {
  mpq_class lo, hi;
};

QInterval imul(const QInterval& a, const QInterval& b) {
  mpq_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  QInterval r{p[0], p[0]};
  for (int i = 1; i < 4; ++i) {
    if (p[i] < r.lo) r.lo = p[i];
    if (p[i] > r.hi) r.hi = p[i];
  }
  return r;
}

QInterval horner_interval(const QPoly& p, const mpq_class& lo, const mpq_class& hi) {
  if (p.is_zero()) return {0, 0};
  const auto& c = p.coeffs();
  QInterval acc{c.back(), c.back()};
  QInterval t{lo, hi};
  for (int k = p.degree() - 1; k >= 0; --k) {
    acc = imul(acc, t);
    acc.lo += c[k];
    acc.hi += c[k];
  }
  return acc;
}

bool same_theta(const RealAlgebraic& a, const RealAlgebraic& b) {
  if (a.defining() == b.defining() && a.lo() == b.lo() && a.hi() == b.hi()) return true;
  return compare(a, b) == 0;
}

}  // namespace

RealAlgebraic::RealAlgebraic(IntPolynomial defining, mpq_class lo, mpq_class hi)
    : def_(std::move(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (def_.empty()) fail(ErrorKind::Internal, "real algebraic number with zero defining polynomial");
  if (sgn(def_.back()) < 0)
    for (auto& c : def_) c = -c;
}

RealAlgebraic RealAlgebraic::from_rational(const mpq_class& q) {
  return RealAlgebraic({-q.get_num(), q.get_den()}, q - mpq_class(1, 2), q + mpq_class(1, 2));
}

std::optional<mpq_class> RealAlgebraic::rational_value() const {
  if (def_.size() != 2) return std::nullopt;
  mpq_class v(-def_[0], def_[1]);
  v.canonicalize();
  return v;
}

RealAlgebraic RealAlgebraic::bisect() const {
  if (auto q = rational_value()) {
    mpq_class w = width() / 4;
    return RealAlgebraic(def_, *q - w, *q + w);
  }
  mpq_class mid = (lo_ + hi_) / 2;
  int s = sign_int_poly(def_, mid);
  if (s == 0) {
    mpq_class w = width() / 4;
    return RealAlgebraic({-mid.get_num(), mid.get_den()}, mid - w, mid + w);
  }
  int slo = sign_int_poly(def_, lo_);
  if (s == slo) return RealAlgebraic(def_, mid, hi_);
  return RealAlgebraic(def_, lo_, mid);
}

RealAlgebraic RealAlgebraic::refined(const mpq_class& max_width) const {
  RealAlgebraic r = *this;
  while (r.width() > max_width) r = r.bisect();
  return r;
}

RealAlgebraic RealAlgebraic::negate() const {
  IntPolynomial d = def_;
  for (std::size_t k = 1; k < d.size(); k += 2) d[k] = -d[k];
  return RealAlgebraic(std::move(d), -hi_, -lo_);
}

double RealAlgebraic::to_double() const {
  RealAlgebraic r = refined(mpq_class(1, mpz_class(1) << 60));
  mpq_class mid = (r.lo() + r.hi()) / 2;
  if (auto q = rational_value()) mid = *q;
  return mid.get_d();
}

std::string RealAlgebraic::decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpq_class mid;
  if (auto q = rational_value()) {
    mid = *q;
  } else {
    RealAlgebraic r = refined(mpq_class(1, scale * 100));
    mid = (r.lo() + r.hi()) / 2;
  }
  mpq_class scaled = mid * scale;
  // round half away from zero
  mpz_class n = scaled.get_num(), d = scaled.get_den();
  bool neg = sgn(n) < 0;
  if (neg) n = -n;
  mpz_class v = (2 * n + d) / (2 * d);
  std::string s = v.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
    s.insert(s.size() - digits, ".");
  }
  if (neg && v != 0) s = "-" + s;
  return s;
}

std::vector<RealAlgebraic> isolate_real_roots(const QPoly& p) {
  if (p.is_zero()) fail(ErrorKind::Domain, "root isolation of the zero polynomial");
  std::vector<RealAlgebraic> out;
  QPoly sp = squarefree_part(p);
  if (sp.degree() <= 0) return out;
  IntPolynomial ip = to_int_primitive(sp);
  if (sp.degree() == 1) {
    out.push_back(RealAlgebraic::from_rational(-sp.coeff(0) / sp.coeff(1)));
    return out;
  }
  auto seq = sturm_sequence(sp);
  mpq_class b = cauchy_bound(sp);
  int total = count_roots(seq, -b, b);
  isolate_rec(seq, ip, sp, -b, b, total, out);
  return out;
}

std::vector<RealAlgebraic> isolate_real_roots(const IntPolynomial& p) { return isolate_real_roots(to_qpoly(p)); }

std::optional<RealAlgebraic> largest_real_root(const QPoly& p) {
  auto r = isolate_real_roots(p);
  if (r.empty()) return std::nullopt;
  return r.back();
}

std::optional<RealAlgebraic> largest_real_root(const IntPolynomial& p) { return largest_real_root(to_qpoly(p)); }

int compare(const RealAlgebraic& a0, const RealAlgebraic& b0) {
  RealAlgebraic a = a0, b = b0;
  if (a.hi() <= b.lo()) return -1;
  if (b.hi() <= a.lo()) return 1;
  QPoly g = gcd(a.defining_q(), b.defining_q());
  if (g.degree() >= 1) {
    mpq_class lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
    if (count_roots(sturm_sequence(g), lo, hi) > 0) return 0;
  }
  for (int it = 0; it < 100000; ++it) {
    if (a.hi() <= b.lo()) return -1;
    if (b.hi() <= a.lo()) return 1;
    if (a.width() >= b.width())
      a = a.bisect();
    else
      b = b.bisect();
  }
  fail(ErrorKind::Internal, "real algebraic comparison did not terminate");
}

int compare(const RealAlgebraic& a0, const mpq_class& q) {
  RealAlgebraic a = a0;
  while (true) {
    if (q <= a.lo()) return 1;
    if (q >= a.hi()) return -1;
    if (sign_int_poly(a.defining(), q) == 0) return 0;
    a = a.bisect();
  }
}

QPoly char_poly_q(const QMatrix& a) {
  std::size_t n = a.size();
  std::vector<mpq_class> c(n + 1, mpq_class(0));
  c[n] = 1;
  QMatrix m(n, std::vector<mpq_class>(n, mpq_class(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    // m <- a*m + c[n-k+1] I
    QMatrix am(n, std::vector<mpq_class>(n, mpq_class(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (sgn(a[i][l]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) am[i][j] += a[i][l] * m[l][j];
      }
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = std::move(am);
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
    c[n - k] = -tr / static_cast<unsigned long>(k);
  }
  return QPoly(std::move(c));
}

IntPolynomial char_poly(const IntMatrix& m) {
  QMatrix q(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& v : m[i]) q[i].emplace_back(v);
  QPoly c = char_poly_q(q);
  IntPolynomial out;
  for (const auto& v : c.coeffs()) out.push_back(v.get_num());
  return out;
}

mpq_class sqrt_lower(const mpq_class& q, unsigned bits) {
  if (sgn(q) <= 0) return 0;
  mpz_class n = (q.get_num() << (2 * bits)) / q.get_den();
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  mpq_class out(r, mpz_class(1) << bits);
  out.canonicalize();
  return out;
}

mpq_class sqrt_upper(const mpq_class& q, unsigned bits) {
  if (sgn(q) <= 0) return 0;
  mpz_class num = q.get_num() << (2 * bits);
  mpz_class n = num / q.get_den();
  if (n * q.get_den() != num) n += 1;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r < n) r += 1;
  mpq_class out(r, mpz_class(1) << bits);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------

Field make_field(const RealAlgebraic& theta) {
  auto d = std::make_shared<FieldDesc>(FieldDesc{theta, theta.defining_q().monic()});
  if (!theta.rational_value()) d->theta = theta.refined(mpq_class(1, mpz_class(1) << 64));
  return d;
}

Field rational_field() {
  static const Field f = std::make_shared<const FieldDesc>(FieldDesc{RealAlgebraic::from_rational(0), QPoly::x()});
  return f;
}

NFElem::NFElem() : f_(rational_field()) {}
NFElem::NFElem(const mpq_class& q) : f_(rational_field()), rep_(QPoly::constant(q)) {}
NFElem::NFElem(Field f, QPoly rep) : f_(std::move(f)), rep_(std::move(rep)) {
  if (rep_.degree() >= f_->modulus.degree()) rep_ = rep_ % f_->modulus;
}

NFElem NFElem::generator(const Field& f) { return NFElem(f, QPoly::x()); }

std::optional<mpq_class> NFElem::rational_value() const {
  if (rep_.degree() <= 0) return rep_.coeff(0);
  return std::nullopt;
}

Field common_field(const Field& a, const Field& b) {
  if (a == b) return a;
  if (b->modulus.degree() <= 1) return a;
  if (a->modulus.degree() <= 1) return b;
  if (!same_theta(a->theta, b->theta))
    fail(ErrorKind::Domain, "arithmetic between elements of unrelated number fields");
  if (a->modulus == b->modulus) return a;
  QPoly g = gcd(a->modulus, b->modulus);
  if (g == a->modulus) return a;
  if (g == b->modulus) return b;
  return std::make_shared<const FieldDesc>(FieldDesc{a->theta, g});
}

NFElem NFElem::lift_to(const Field& f) const {
  if (f == f_) return *this;
  return NFElem(f, rep_);
}

NFElem operator+(const NFElem& a, const NFElem& b) {
  Field f = common_field(a.f_, b.f_);
  return NFElem(f, a.lift_to(f).rep_ + b.lift_to(f).rep_);
}

NFElem operator-(const NFElem& a, const NFElem& b) {
  Field f = common_field(a.f_, b.f_);
  return NFElem(f, a.lift_to(f).rep_ - b.lift_to(f).rep_);
}

NFElem operator*(const NFElem& a, const NFElem& b) {
  Field f = common_field(a.f_, b.f_);
  return NFElem(f, a.lift_to(f).rep_ * b.lift_to(f).rep_);
}

NFElem NFElem::operator-() const { return NFElem(f_, -rep_); }

NFElem NFElem::inverse() const {
  if (auto q = rational_value()) {
    if (sgn(*q) == 0) fail(ErrorKind::Domain, "division by zero in number field");
    return NFElem(f_, QPoly::constant(1 / *q));
  }
  QPoly s, t;
  QPoly g = ext_gcd(rep_, f_->modulus, s, t);
  if (g.degree() == 0) return NFElem(f_, s);
  if (nf_sign(*this) == 0) fail(ErrorKind::Domain, "division by zero in number field");
  // theta is not a root of g; move to the complementary factor
  auto nf = std::make_shared<const FieldDesc>(FieldDesc{f_->theta, (f_->modulus / g).monic()});
  NFElem moved(nf, rep_);
  return moved.inverse();
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

NFElem NFElem::pow(unsigned e) const {
  NFElem r(f_, QPoly::constant(1)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::string NFElem::str() const { return rep_.str("t"); }

int nf_sign(const NFElem& e) {
  if (auto q = e.rational_value()) return sgn(*q);
  RealAlgebraic th = e.field()->theta;
  bool zero_checked = false;
  for (int it = 0; it < 20000; ++it) {
    QInterval v = horner_interval(e.rep(), th.lo(), th.hi());
    if (sgn(v.lo) > 0) return 1;
    if (sgn(v.hi) < 0) return -1;
    if (!zero_checked) {
      zero_checked = true;
      QPoly g = gcd(e.rep(), e.field()->modulus);
      if (g.degree() >= 1 && count_roots(sturm_sequence(g), th.lo(), th.hi()) > 0) return 0;
    }
    if (auto q = th.rational_value()) return e.rep().sign_at(*q);
    th = th.bisect();
  }
  fail(ErrorKind::Internal, "number field sign determination did not terminate");
}

int nf_compare(const NFElem& a, const NFElem& b) { return nf_sign(a - b); }

std::pair<mpq_class, mpq_class> nf_interval(const NFElem& e, const mpq_class& max_width) {
  if (auto q = e.rational_value()) return {*q, *q};
  RealAlgebraic th = e.field()->theta;
  while (true) {
    if (auto q = th.rational_value()) {
      mpq_class v = e.rep().eval(*q);
      return {v, v};
    }
    QInterval v = horner_interval(e.rep(), th.lo(), th.hi());
    if (v.hi - v.lo <= max_width) return {v.lo, v.hi};
    th = th.bisect();
  }
}

double nf_to_double(const NFElem& e) {
  auto iv = nf_interval(e, mpq_class(1, mpz_class(1) << 60));
  return mpq_class((iv.first + iv.second) / 2).get_d();
}

RealAlgebraic nf_to_real_algebraic(const NFElem& e) {
  if (auto q = e.rational_value()) return RealAlgebraic::from_rational(*q);
  const QPoly& m = e.field()->modulus;
  std::size_t k = static_cast<std::size_t>(m.degree());
  QMatrix mat(k, std::vector<mpq_class>(k, mpq_class(0)));
  QPoly col = e.rep();
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) mat[i][j] = col.coeff(i);
    col = (col * QPoly::x()) % m;
  }
  QPoly chi = squarefree_part(char_poly_q(mat));
  auto seq = sturm_sequence(chi);
  IntPolynomial ichi = to_int_primitive(chi);
  RealAlgebraic th = e.field()->theta;
  for (int it = 0; it < 20000; ++it) {
    if (auto q = th.rational_value()) return RealAlgebraic::from_rational(e.rep().eval(*q));
    QInterval v = horner_interval(e.rep(), th.lo(), th.hi());
    mpq_class pad = (v.hi - v.lo) / 4 + mpq_class(1, mpz_class(1) << 200);
    mpq_class lo = v.lo - pad, hi = v.hi + pad;
    if (chi.sign_at(lo) != 0 && chi.sign_at(hi) != 0 && count_roots(seq, lo, hi) == 1) {
      if (chi.degree() == 1) return RealAlgebraic::from_rational(-chi.coeff(0) / chi.coeff(1));
      return RealAlgebraic(ichi, lo, hi);
    }
    th = th.bisect();
  }
  fail(ErrorKind::Internal, "conversion of number field element did not terminate");
}

}  // namespace ddeg

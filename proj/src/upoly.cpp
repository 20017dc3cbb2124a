#include "ddeg/upoly.hpp"

#include <sstream>

#include "ddeg/errors.hpp"

namespace ddeg {

QPoly::QPoly(std::vector<mpq_class> c) : c_(std::move(c)) {
  for (auto& v : c_) v.canonicalize();
  trim();
}

QPoly QPoly::constant(const mpq_class& c) { return QPoly(std::vector<mpq_class>{c}); }

QPoly QPoly::monomial(const mpq_class& c, std::size_t k) {
  std::vector<mpq_class> v(k + 1, mpq_class(0));
  v[k] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

mpq_class QPoly::eval(const mpq_class& t) const {
  mpq_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
  return r;
}

int QPoly::sign_at(const mpq_class& t) const { return sgn(eval(t)); }

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpq_class> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  mpq_class l = lead();
  std::vector<mpq_class> v(c_);
  for (auto& x : v) x /= l;
  return QPoly(std::move(v));
}

QPoly QPoly::neg_x() const {
  std::vector<mpq_class> v(c_);
  for (std::size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
  return QPoly(std::move(v));
}

QPoly QPoly::scale_x(const mpq_class& s) const {
  std::vector<mpq_class> v(c_);
  mpq_class p = 1;
  for (auto& x : v) {
    x *= p;
    p *= s;
  }
  return QPoly(std::move(v));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
  std::vector<mpq_class> v(c_);
  for (auto& x : v) x = -x;
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> v(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(v));
}

QPoly operator*(const mpq_class& s, const QPoly& a) {
  std::vector<mpq_class> v(a.c_);
  for (auto& x : v) x *= s;
  return QPoly(std::move(v));
}

std::string QPoly::str(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const mpq_class& c = c_[k];
    if (sgn(c) == 0) continue;
    mpq_class a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) fail(ErrorKind::Domain, "polynomial division by zero");
  std::vector<mpq_class> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) {
    q = {};
    r = a;
    return;
  }
  std::vector<mpq_class> quo(a.degree() - db + 1, mpq_class(0));
  const mpq_class& lb = b.lead();
  for (int k = a.degree(); k >= db; --k) {
    if (sgn(rem[k]) == 0) continue;
    mpq_class f = rem[k] / lb;
    quo[k - db] = f;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeffs()[j];
  }
  rem.resize(db);
  q = QPoly(std::move(quo));
  r = QPoly(std::move(rem));
}

QPoly operator/(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return q;
}

QPoly operator%(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return r;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    QPoly r = (x % y).monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

QPoly ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b;
  QPoly s0 = QPoly::constant(1), s1;
  QPoly t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = {};
    t = {};
    return {};
  }
  mpq_class inv = 1 / r0.lead();
  s = inv * s0;
  t = inv * t0;
  return inv * r0;
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p.monic();
  QPoly g = gcd(p, p.derivative());
  return (p / g).monic();
}

QPoly pow(const QPoly& p, unsigned e) {
  QPoly r = QPoly::constant(1), b = p;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

IntPolynomial to_int_primitive(const QPoly& p) {
  if (p.is_zero()) return {};
  mpz_class den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  IntPolynomial out;
  mpz_class g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_class v = c.get_num() * (den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (sgn(out.back()) < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

QPoly to_qpoly(const IntPolynomial& p) {
  std::vector<mpq_class> v;
  v.reserve(p.size());
  for (const auto& c : p) v.emplace_back(c);
  return QPoly(std::move(v));
}

std::string int_poly_str(const IntPolynomial& p, const char* var) { return to_qpoly(p).str(var); }

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  QPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    QPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    // positive rescaling keeps signs and tames coefficient growth
    seq.push_back(mpq_class(1) / abs(r.lead()) * r);
  }
  return seq;
}

int sign_variations(const std::vector<QPoly>& seq, const mpq_class& t) {
  int prev = 0, v = 0;
  for (const auto& q : seq) {
    int s = q.sign_at(t);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int count_roots(const std::vector<QPoly>& seq, const mpq_class& lo, const mpq_class& hi) {
  if (seq.empty()) return 0;
  return sign_variations(seq, lo) - sign_variations(seq, hi);
}

mpq_class cauchy_bound(const QPoly& p) {
  mpq_class m = 0;
  if (p.degree() <= 0) return 1;
  for (int k = 0; k < p.degree(); ++k) {
    mpq_class v = abs(p.coeffs()[k] / p.lead());
    if (v > m) m = v;
  }
  // round up to an integer to keep interval endpoints small
  mpz_class up = m.get_num() / m.get_den() + 2;
  return mpq_class(up);
}

}  // namespace ddeg

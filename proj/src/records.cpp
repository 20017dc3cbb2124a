#include "records.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ddeg/errors.hpp"
#include "ddeg/normal_forms.hpp"
#include "ddeg/perron.hpp"
#include "json.hpp"

namespace ddeg {

using nlohmann::json;

namespace {

const char* kSchema = "ddeg/1";

std::string rat_str(const mpq_class& q) { return q.get_str(); }

json int_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

json poly_json(const IntPolynomial& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(int_json(c));
  return a;
}

// Drops integer roots other than the number itself from a monic defining polynomial.
IntPolynomial tidy_defining(const RealAlgebraic& x) {
  IntPolynomial p = x.defining();
  if (p.size() <= 2 || p.back() != 1) return p;
  bool changed = true;
  while (changed && p.size() > 2) {
    changed = false;
    for (const auto& r : isolate_real_roots(p)) {
      if (compare(r, x) == 0) continue;
      RealAlgebraic w = r.refined(mpq_class(1, 4));
      mpz_class lo = w.lo().get_num() / w.lo().get_den() - 1;
      for (mpz_class k = lo; k <= lo + 2 && !changed; ++k) {
        mpz_class v = 0;
        for (std::size_t i = p.size(); i-- > 0;) v = v * k + p[i];
        if (v != 0) continue;
        IntPolynomial q(p.size() - 1);
        mpz_class carry = 0;
        for (std::size_t i = p.size() - 1; i-- > 0;) {
          carry = p[i + 1] + carry * k;
          q[i] = carry;
        }
        p = q;
        changed = true;
      }
      if (changed) break;
    }
  }
  return p;
}

json alg_json(const RealAlgebraic& x, int digits) {
  RealAlgebraic w = x.refined(mpq_class(1, 1000000));
  return json{{"defining", poly_json(tidy_defining(x))},
              {"interval", {rat_str(w.lo()), rat_str(w.hi())}},
              {"approx", x.decimal(digits)}};
}

std::string alg_line(const RealAlgebraic& x, int digits) {
  return x.decimal(digits) + "   root of " + int_poly_str(tidy_defining(x));
}

json config_json(const JobConfig& c) {
  return json{{"precision_bits", c.precision_bits}, {"digits", c.digits},
              {"oracle_depth", c.oracle_depth},     {"horizon", c.horizon},
              {"budget_terms", c.budget_terms},     {"budget_matrices", c.budget_matrices},
              {"tolerance", c.tolerance},           {"handelman_cap", c.handelman_cap}};
}

json base(const JobConfig& c, const char* kind) { return json{{"schema", kSchema}, {"kind", kind}, {"config", config_json(c)}}; }

std::string line(const json& j) { return j.dump() + "\n"; }

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes:
      return "yes";
    case Tri::No:
      return "no";
    default:
      return "inconclusive";
  }
}

json oracle_json(const OracleReport& o) {
  json rows = json::array();
  for (const auto& r : o.rows)
    rows.push_back({{"r", r.r}, {"degree", r.degree}, {"certified", r.certified}, {"root", r.root}});
  json j{{"rows", rows}, {"truncated", o.truncated}, {"estimator", o.estimator}};
  j["estimate"] = o.estimate ? json(*o.estimate) : json(nullptr);
  if (!o.note.empty()) j["note"] = o.note;
  if (!o.recurrence.empty()) j["recurrence"] = o.recurrence;
  return j;
}

void oracle_table(std::ostringstream& os, const OracleReport& o) {
  os << "  r  " << std::setw(14) << "deg(f^r)" << "  " << std::setw(12) << "deg^(1/r)" << "  certified\n";
  for (const auto& r : o.rows)
    os << "  " << std::setw(2) << r.r << " " << std::setw(14) << r.degree << "  " << std::setw(12) << std::fixed
       << std::setprecision(6) << r.root << "  " << (r.certified ? "yes" : "no") << "\n";
  os.unsetf(std::ios::fixed);
  if (o.estimate) os << "  estimate " << std::setprecision(10) << *o.estimate << " (" << o.estimator << ")\n";
  if (o.truncated) os << "  truncated: " << o.note << "\n";
}

json plan_json(const RealizationPlan& p, int digits) {
  json j{{"dimension", p.dimension}, {"automorphism", p.automorphism.str()}, {"predicted", alg_json(p.predicted, digits)},
         {"tag", p.tag},             {"notes", p.notes}};
  j["verified"] = p.verified ? json(*p.verified) : json(nullptr);
  if (!p.verification.empty()) j["verification"] = p.verification;
  return j;
}

void plan_table(std::ostringstream& os, const RealizationPlan& p, int digits) {
  os << "realization   " << p.tag << " in A^" << p.dimension << "\n";
  os << "automorphism  " << p.automorphism.str() << "\n";
  os << "predicted     " << alg_line(p.predicted, digits) << "\n";
  if (p.verified) os << "verified      " << (*p.verified ? "yes" : "no") << ": " << p.verification << "\n";
  for (const auto& n : p.notes) os << "note          " << n << "\n";
}

IntPolynomial parse_int_poly(const std::string& text) {
  QPoly q = parse_univariate(text);
  IntPolynomial p;
  for (const auto& c : q.coeffs()) {
    if (c.get_den() != 1) fail(ErrorKind::Domain, "polynomial must have integer coefficients");
    p.push_back(c.get_num());
  }
  // a bare integer k stands for the root of x - k
  if (p.size() == 1) p = {-p[0], mpz_class(1)};
  return p;
}

IntMatrix parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    fail(ErrorKind::Parse, "matrix must be written as [[a,b],[c,d]]");
  }
  IntMatrix m;
  if (!j.is_array()) fail(ErrorKind::Parse, "matrix must be a list of rows");
  for (const auto& row : j) {
    if (!row.is_array()) fail(ErrorKind::Parse, "matrix must be a list of rows");
    std::vector<mpz_class> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) fail(ErrorKind::Parse, "matrix entries must be integers");
      r.emplace_back(x.get<long>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

EngineConfig JobConfig::engine() const {
  EngineConfig e;
  e.oracle_depth = oracle_depth;
  e.horizon = horizon;
  e.tolerance = tolerance;
  e.budget.max_terms = budget_terms;
  e.matrices.max_matrices = budget_matrices;
  return e;
}

void JobConfig::set(const std::string& key, const std::string& value) {
  auto as_ull = [&](unsigned long long lo) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(value, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != value.size() || value.empty() || value[0] == '-' || v < lo)
      fail(ErrorKind::Domain, "invalid value for " + key + ": " + value);
    return v;
  };
  if (key == "precision_bits") precision_bits = static_cast<unsigned>(as_ull(16));
  else if (key == "digits") digits = static_cast<int>(std::min<unsigned long long>(as_ull(1), 1000));
  else if (key == "oracle_depth") oracle_depth = static_cast<unsigned>(std::min<unsigned long long>(as_ull(1), 64));
  else if (key == "horizon") horizon = static_cast<unsigned>(as_ull(0));
  else if (key == "budget_terms") budget_terms = as_ull(1);
  else if (key == "budget_matrices") budget_matrices = as_ull(1);
  else if (key == "handelman_cap") handelman_cap = static_cast<int>(std::min<unsigned long long>(as_ull(0), 64));
  else if (key == "tolerance") {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(value, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != value.size() || !(v > 0)) fail(ErrorKind::Domain, "invalid value for tolerance: " + value);
    tolerance = v;
  } else {
    fail(ErrorKind::Domain, "unknown configuration key: " + key);
  }
}

std::string JobConfig::get(const std::string& key) const {
  json j = config_json(*this);
  if (!j.contains(key)) fail(ErrorKind::Domain, "unknown configuration key: " + key);
  return j[key].dump();
}

std::string quadratic_surd_str(long a, long k) {
  long D = a * a + 4 * k;
  long s = 1, r = D;
  for (long f = 2; f * f <= r; ++f)
    while (r % (f * f) == 0) {
      r /= f * f;
      s *= f;
    }
  if (r == 1) return std::to_string((a + s) / 2);
  auto surd = [&](long coef) { return (coef == 1 ? std::string() : std::to_string(coef) + "*") + "sqrt(" + std::to_string(r) + ")"; };
  if (a % 2 == 0 && s % 2 == 0) {
    std::string head = a == 0 ? "" : std::to_string(a / 2) + "+";
    return head + surd(s / 2);
  }
  return "(" + (a == 0 ? std::string() : std::to_string(a) + "+") + surd(s) + ")/2";
}

Output run_compute(const JobConfig& cfg, const std::string& text) {
  Endomorphism f = parse_endomorphism(text);
  DynamicalDegreeResult r = dynamical_degree(f, cfg.engine());

  json j = base(cfg, "result");
  j["input"] = f.str();
  j["exact"] = r.exact;
  j["basis"] = r.basis;
  if (r.exact) j["value"] = alg_json(*r.value, cfg.digits);
  else j["value"] = nullptr;
  j["bracket"] = {{"lower", alg_json(r.lower, cfg.digits)},
                  {"upper", alg_json(r.upper, cfg.digits)},
                  {"upper_strict", r.upper_strict}};
  json cert = json::array();
  for (const auto& s : r.certificate) {
    json d = json::object();
    for (const auto& [k, v] : s.data) d[k] = v;
    cert.push_back({{"step", s.step}, {"data", d}});
  }
  j["certificate"] = cert;
  j["oracle"] = oracle_json(r.oracle);
  j["oracle_consistent"] = r.oracle_consistent ? json(*r.oracle_consistent) : json(nullptr);

  std::ostringstream os;
  os << "input        " << f.str() << "\n";
  if (r.exact) {
    os << "lambda       " << alg_line(*r.value, cfg.digits) << "\n";
    os << "basis        " << r.basis << "\n";
  } else {
    os << "lambda in    [" << r.lower.decimal(cfg.digits) << ", " << r.upper.decimal(cfg.digits)
       << (r.upper_strict ? ")" : "]") << "\n";
    os << "basis        bracket\n";
  }
  os << "certificate\n";
  for (const auto& s : r.certificate) {
    os << "  " << s.step << "\n";
    for (const auto& [k, v] : s.data) os << "      " << k << ": " << v << "\n";
  }
  os << "oracle\n";
  oracle_table(os, r.oracle);
  if (r.oracle_consistent) os << "  consistent with the result: " << (*r.oracle_consistent ? "yes" : "no") << "\n";

  Output out;
  out.records = line(j);
  out.table = os.str();
  out.exit_code = r.exact && r.basis == "proven" ? 0 : 2;
  return out;
}

Output run_enumerate(const JobConfig& cfg, const std::string& kind, int d) {
  std::vector<SpectrumEntry> entries;
  if (kind == "theorem1" || kind == "affine-triangular") entries = enumerate_affine_triangular_set_A3(d);
  else if (kind == "shiftlike") entries = enumerate_shiftlike_set_A3(d);
  else fail(ErrorKind::Domain, "unknown enumeration: " + kind + " (expected theorem1, affine-triangular or shiftlike)");
  Output out;
  std::ostringstream os;
  os << kind << " set, degree <= " << d << ": " << entries.size() << " values\n";
  os << std::left << std::setw(4) << "new" << std::setw(12) << "(a,b,c)" << std::setw(18) << "closed form"
     << std::setw(20) << "polynomial" << std::setw(24) << "decimal"
     << "witnesses\n";
  std::size_t fresh = 0;
  for (const auto& e : entries) {
    bool is_new = e.first_degree == d;
    fresh += is_new;
    long k = e.b * e.c;
    json j = base(cfg, "spectrum-entry");
    j["set"] = kind;
    j["d"] = d;
    j["triple"] = {e.a, e.b, e.c};
    j["value"] = alg_json(e.value, cfg.digits);
    j["closed_form"] = quadratic_surd_str(e.a, k);
    j["quadratic"] = poly_json(e.quadratic);
    j["first_degree"] = e.first_degree;
    j["degrees"] = e.degrees;
    j["new_at_d"] = is_new;
    j["witnesses"] = e.witnesses;
    out.records += line(j);
    std::string triple = "(" + std::to_string(e.a) + "," + std::to_string(e.b) + "," + std::to_string(e.c) + ")";
    os << std::setw(4) << (is_new ? "*" : "") << std::setw(12) << triple << std::setw(18) << quadratic_surd_str(e.a, k)
       << std::setw(20) << int_poly_str(tidy_defining(e.value)) << std::setw(24) << e.value.decimal(std::min(cfg.digits, 20));
    for (std::size_t i = 0; i < e.witnesses.size(); ++i) os << (i ? "  " : "") << e.witnesses[i];
    os << "\n";
  }
  os << std::right;
  json s = base(cfg, "spectrum-summary");
  s["set"] = kind;
  s["d"] = d;
  s["count"] = entries.size();
  s["new_at_d"] = fresh;
  out.records += line(s);
  os << fresh << " values new at degree " << d << " (marked *)\n";
  out.table = os.str();
  return out;
}

Output run_classify(const JobConfig& cfg, const std::string& poly_text, const std::string& selector) {
  AlgebraicCandidate c = make_candidate(parse_int_poly(poly_text), selector);
  ClassificationReport rep = classify_number(c, cfg.precision_bits, cfg.handelman_cap);
  if (rep.realization) verify_plan(*rep.realization, cfg.engine());
  std::optional<int> lind;
  if (rep.weak_perron.verdict == Tri::Yes) lind = lind_power_perron(c, 12, cfg.precision_bits);

  json j = base(cfg, "classification");
  j["number"] = alg_json(c.lambda, cfg.digits);
  j["polynomial"] = int_poly_str(c.given);
  j["reduced"] = int_poly_str(c.reduced);
  j["weak_perron"] = tri_name(rep.weak_perron.verdict);
  j["perron"] = tri_name(rep.perron.verdict);
  j["handelman"] = {{"verdict", handelman_name(rep.handelman.kind)},
                    {"certificate", rep.handelman.certificate.empty() ? json(nullptr)
                                                                      : json(int_poly_str(rep.handelman.certificate))},
                    {"degree_cap", rep.handelman.degree_cap},
                    {"reason", rep.handelman.reason}};
  j["minimal_dimension"] = rep.minimal_dimension ? json(*rep.minimal_dimension) : json(nullptr);
  j["perron_power"] = lind ? json(*lind) : json(nullptr);
  j["realization"] = rep.realization ? plan_json(*rep.realization, cfg.digits) : json(nullptr);
  j["notes"] = rep.notes;

  std::ostringstream os;
  os << "number        " << alg_line(c.lambda, cfg.digits) << "\n";
  os << "weak Perron   " << tri_name(rep.weak_perron.verdict) << "\n";
  os << "Perron        " << tri_name(rep.perron.verdict) << "\n";
  os << "Handelman     " << handelman_name(rep.handelman.kind);
  if (!rep.handelman.certificate.empty()) os << " (certificate " << int_poly_str(rep.handelman.certificate) << ")";
  else os << " (" << rep.handelman.reason << ")";
  os << "\n";
  os << "min dimension " << (rep.minimal_dimension ? std::to_string(*rep.minimal_dimension) : "unknown") << "\n";
  if (lind) os << "Perron power  lambda^" << *lind << " is Perron\n";
  if (rep.realization) plan_table(os, *rep.realization, cfg.digits);
  for (const auto& n : rep.notes) os << "note          " << n << "\n";

  Output out;
  out.records = line(j);
  out.table = os.str();
  out.exit_code = rep.realization && rep.realization->verified == false ? 2 : 0;
  return out;
}

Output run_realize(const JobConfig& cfg, const std::string& poly_text, const std::string& selector,
                   const std::optional<std::string>& matrix_text) {
  AlgebraicCandidate c = make_candidate(parse_int_poly(poly_text), selector);
  std::optional<IntMatrix> m;
  if (matrix_text) m = parse_matrix(*matrix_text);
  RealizationPlan plan = realize_weak_perron(c, m, cfg.handelman_cap);
  verify_plan(plan, cfg.engine());
  json j = base(cfg, "realization");
  j.update(plan_json(plan, cfg.digits));
  std::ostringstream os;
  plan_table(os, plan, cfg.digits);
  Output out;
  out.records = line(j);
  out.table = os.str();
  out.exit_code = plan.verified.value_or(false) ? 0 : 2;
  return out;
}

Output run_examplerst(const JobConfig& cfg, long r, long s, long t) {
  RealizationPlan plan = examplerst_family(r, s, t);
  verify_plan(plan, cfg.engine());
  json j = base(cfg, "realization");
  j.update(plan_json(plan, cfg.digits));
  j["rst"] = {r, s, t};
  std::ostringstream os;
  os << "(r,s,t)       (" << r << "," << s << "," << t << ")\n";
  plan_table(os, plan, cfg.digits);
  Output out;
  out.records = line(j);
  out.table = os.str();
  out.exit_code = plan.verified.value_or(false) ? 0 : 2;
  return out;
}

Output run_oracle(const JobConfig& cfg, const std::string& text, unsigned depth) {
  Endomorphism f = parse_endomorphism(text);
  if (!is_dominant(f)) fail(ErrorKind::Domain, "not dominant: Jacobian determinant identically zero");
  Budget b;
  b.max_terms = cfg.budget_terms;
  OracleReport o = oracle_degree_sequence(f, depth, b);
  Output out;
  for (const auto& r : o.rows) {
    json j = base(cfg, "oracle-row");
    j["r"] = r.r;
    j["degree"] = r.degree;
    j["certified"] = r.certified;
    j["root"] = r.root;
    out.records += line(j);
  }
  json s = base(cfg, "oracle-summary");
  s["input"] = f.str();
  s.update(oracle_json(o));
  s.erase("rows");
  out.records += line(s);
  std::ostringstream os;
  os << "input  " << f.str() << "\n";
  oracle_table(os, o);
  out.table = os.str();
  out.exit_code = o.truncated ? 4 : 0;
  return out;
}

Output error_output(const JobConfig& cfg, const std::string& command, const std::exception& e) {
  json j = base(cfg, "error");
  j["command"] = command;
  j["message"] = e.what();
  Output out;
  out.exit_code = 1;
  std::string category = "internal";
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::Parse:
        category = "parse";
        out.exit_code = 3;
        break;
      case ErrorKind::Structural:
        category = "structural";
        out.exit_code = 3;
        break;
      case ErrorKind::Domain:
        category = "domain";
        out.exit_code = 3;
        break;
      case ErrorKind::Resource:
        category = "resource";
        out.exit_code = 4;
        break;
      case ErrorKind::Internal:
        break;
    }
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) j["position"] = pe->position();
    if (const auto* re = dynamic_cast<const ResourceError*>(&e); re && !re->partial().empty()) j["partial"] = re->partial();
  } else if (dynamic_cast<const std::bad_alloc*>(&e)) {
    category = "resource";
    out.exit_code = 4;
  }
  j["category"] = category;
  out.records = line(j);
  out.table = "error (" + category + "): " + e.what() + "\n";
  return out;
}

}  // namespace ddeg

#include "ddeg/ddeg.h"

#include <cstring>
#include <functional>
#include <new>
#include <string>

#include "ddeg/errors.hpp"
#include "ddeg/polynomial.hpp"
#include "records.hpp"

struct ddeg_config {
  ddeg::JobConfig cfg;
};

struct ddeg_result {
  ddeg::Output out;
};

struct ddeg_endo {
  ddeg::Endomorphism f;
  std::string text;
};

namespace {

thread_local std::string last_error;

ddeg_status set_error(ddeg_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

ddeg_status status_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const ddeg::Error*>(&e)) {
    switch (err->kind()) {
      case ddeg::ErrorKind::Parse:
      case ddeg::ErrorKind::Structural:
        return DDEG_EINPUT;
      case ddeg::ErrorKind::Domain:
        return DDEG_EDOMAIN;
      case ddeg::ErrorKind::Resource:
        return DDEG_ERESOURCE;
      case ddeg::ErrorKind::Internal:
        return DDEG_EINTERNAL;
    }
  }
  if (dynamic_cast<const std::bad_alloc*>(&e)) return DDEG_ERESOURCE;
  return DDEG_EINTERNAL;
}

ddeg_status run_job(const ddeg_config* cfg, ddeg_result** out, const char* command,
                    const std::function<ddeg::Output(const ddeg::JobConfig&)>& job) {
  if (!out) return set_error(DDEG_EARG, "null output pointer");
  *out = nullptr;
  ddeg::JobConfig c = cfg ? cfg->cfg : ddeg::JobConfig{};
  auto* res = new (std::nothrow) ddeg_result;
  if (!res) return set_error(DDEG_ERESOURCE, "out of memory");
  ddeg_status st = DDEG_OK;
  try {
    res->out = job(c);
    if (res->out.exit_code == 2) st = DDEG_INEXACT;
    else if (res->out.exit_code == 4) st = DDEG_ERESOURCE;
    last_error.clear();
  } catch (const std::exception& e) {
    res->out = ddeg::error_output(c, command, e);
    st = set_error(status_for(e), e.what());
  }
  *out = res;
  return st;
}

ddeg_status endo_op(ddeg_endo** out, const std::function<ddeg::Endomorphism()>& op) {
  if (!out) return set_error(DDEG_EARG, "null output pointer");
  *out = nullptr;
  try {
    auto* e = new ddeg_endo;
    e->f = op();
    e->text = e->f.str();
    *out = e;
    return DDEG_OK;
  } catch (const std::exception& e) {
    return set_error(status_for(e), e.what());
  }
}

}  // namespace

extern "C" {

const char* ddeg_version(void) { return "1.0.0"; }

const char* ddeg_status_name(ddeg_status s) {
  switch (s) {
    case DDEG_OK:
      return "ok";
    case DDEG_INEXACT:
      return "inexact";
    case DDEG_EINPUT:
      return "input error";
    case DDEG_ERESOURCE:
      return "resource limit";
    case DDEG_EDOMAIN:
      return "domain error";
    case DDEG_EINTERNAL:
      return "internal error";
    case DDEG_EARG:
      return "invalid argument";
  }
  return "unknown";
}

const char* ddeg_last_error(void) { return last_error.c_str(); }

ddeg_config* ddeg_config_new(void) { return new (std::nothrow) ddeg_config; }

void ddeg_config_free(ddeg_config* cfg) { delete cfg; }

ddeg_status ddeg_config_set(ddeg_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return set_error(DDEG_EARG, "null argument");
  try {
    cfg->cfg.set(key, value);
    return DDEG_OK;
  } catch (const std::exception& e) {
    return set_error(DDEG_EARG, e.what());
  }
}

ddeg_status ddeg_config_get(const ddeg_config* cfg, const char* key, char* buf, size_t len) {
  if (!cfg || !key || !buf) return set_error(DDEG_EARG, "null argument");
  try {
    std::string v = cfg->cfg.get(key);
    if (v.size() + 1 > len) return set_error(DDEG_EARG, "buffer too small");
    std::memcpy(buf, v.c_str(), v.size() + 1);
    return DDEG_OK;
  } catch (const std::exception& e) {
    return set_error(DDEG_EARG, e.what());
  }
}

ddeg_status ddeg_compute(const ddeg_config* cfg, const char* text, ddeg_result** out) {
  if (!text) return set_error(DDEG_EARG, "null input");
  std::string s(text);
  return run_job(cfg, out, "compute", [&](const ddeg::JobConfig& c) { return ddeg::run_compute(c, s); });
}

ddeg_status ddeg_enumerate(const ddeg_config* cfg, const char* kind, int degree, ddeg_result** out) {
  if (!kind) return set_error(DDEG_EARG, "null kind");
  std::string k(kind);
  return run_job(cfg, out, "enumerate", [&](const ddeg::JobConfig& c) { return ddeg::run_enumerate(c, k, degree); });
}

ddeg_status ddeg_classify(const ddeg_config* cfg, const char* poly, const char* root, ddeg_result** out) {
  if (!poly) return set_error(DDEG_EARG, "null polynomial");
  std::string p(poly), r(root ? root : "largest");
  return run_job(cfg, out, "classify", [&](const ddeg::JobConfig& c) { return ddeg::run_classify(c, p, r); });
}

ddeg_status ddeg_realize(const ddeg_config* cfg, const char* poly, const char* root, const char* matrix,
                         ddeg_result** out) {
  if (!poly) return set_error(DDEG_EARG, "null polynomial");
  std::string p(poly), r(root ? root : "largest");
  std::optional<std::string> m;
  if (matrix) m = std::string(matrix);
  return run_job(cfg, out, "realize", [&](const ddeg::JobConfig& c) { return ddeg::run_realize(c, p, r, m); });
}

ddeg_status ddeg_examplerst(const ddeg_config* cfg, long r, long s, long t, ddeg_result** out) {
  return run_job(cfg, out, "examplerst", [&](const ddeg::JobConfig& c) { return ddeg::run_examplerst(c, r, s, t); });
}

ddeg_status ddeg_oracle(const ddeg_config* cfg, const char* text, unsigned depth, ddeg_result** out) {
  if (!text) return set_error(DDEG_EARG, "null input");
  std::string s(text);
  return run_job(cfg, out, "oracle", [&](const ddeg::JobConfig& c) { return ddeg::run_oracle(c, s, depth); });
}

const char* ddeg_result_records(const ddeg_result* res) { return res ? res->out.records.c_str() : ""; }
const char* ddeg_result_table(const ddeg_result* res) { return res ? res->out.table.c_str() : ""; }
int ddeg_result_exit_code(const ddeg_result* res) { return res ? res->out.exit_code : 1; }
void ddeg_result_free(ddeg_result* res) { delete res; }

ddeg_status ddeg_endo_parse(const char* text, ddeg_endo** out) {
  if (!text) return set_error(DDEG_EARG, "null input");
  std::string s(text);
  return endo_op(out, [&] { return ddeg::parse_endomorphism(s); });
}

void ddeg_endo_free(ddeg_endo* f) { delete f; }
const char* ddeg_endo_str(const ddeg_endo* f) { return f ? f->text.c_str() : ""; }
size_t ddeg_endo_arity(const ddeg_endo* f) { return f ? f->f.arity() : 0; }

long long ddeg_endo_degree(const ddeg_endo* f) {
  if (!f) return -1;
  ddeg::Degree d = f->f.degree();
  return d == ddeg::kNegInfDegree ? -1 : static_cast<long long>(d);
}

ddeg_status ddeg_endo_compose(const ddeg_endo* outer, const ddeg_endo* inner, ddeg_endo** out) {
  if (!outer || !inner) return set_error(DDEG_EARG, "null handle");
  return endo_op(out, [&] { return ddeg::compose(outer->f, inner->f); });
}

ddeg_status ddeg_endo_iterate(const ddeg_endo* f, unsigned r, ddeg_endo** out) {
  if (!f) return set_error(DDEG_EARG, "null handle");
  if (r == 0) return set_error(DDEG_EARG, "iteration count must be at least 1");
  return endo_op(out, [&] { return ddeg::iterate(f->f, r); });
}

int ddeg_endo_equal(const ddeg_endo* a, const ddeg_endo* b) { return a && b && a->f == b->f; }

}  // extern "C"

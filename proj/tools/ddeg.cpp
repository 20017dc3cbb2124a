// ddeg: command-line front end over the C interface.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ddeg/ddeg.h"

namespace {

struct Options {
  std::map<std::string, std::string> config;  // key -> textual value, only the ones given
  std::string format = "table";
};

void add_config_flag(CLI::App& app, Options& opt, const std::string& flag, const std::string& key,
                     const std::string& help) {
  std::string env = "DDEG_";
  for (char ch : key) env += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  app.add_option_function<std::string>(
         "--" + flag, [&opt, key](const std::string& v) { opt.config[key] = v; }, help)
      ->envname(env);
}

std::string read_input(const std::optional<std::string>& arg, const std::optional<std::string>& file) {
  if (arg && file) throw CLI::ValidationError("give the input either as an argument or with --file, not both");
  if (arg) return *arg;
  if (!file) throw CLI::ValidationError("missing input: pass it as an argument or with --file");
  std::istream* in = &std::cin;
  std::ifstream fin;
  if (*file != "-") {
    fin.open(*file);
    if (!fin) throw CLI::ValidationError("cannot open " + *file);
    in = &fin;
  }
  std::ostringstream ss;
  ss << in->rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical degrees of polynomial endomorphisms and automorphisms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ddeg_version()));

  Options opt;
  add_config_flag(app, opt, "precision-bits", "precision_bits", "bits for interval refinement (default 256)");
  add_config_flag(app, opt, "digits", "digits", "decimal digits printed (default 30)");
  add_config_flag(app, opt, "oracle-depth", "oracle_depth", "iterates used by the growth oracle (default 8)");
  add_config_flag(app, opt, "horizon", "horizon", "stability test horizon, 0 for 2n+4");
  add_config_flag(app, opt, "budget-terms", "budget_terms", "term cap for exact composition");
  add_config_flag(app, opt, "budget-matrices", "budget_matrices", "cap on enumerated contained matrices");
  add_config_flag(app, opt, "tolerance", "tolerance", "numeric agreement tolerance for the oracle");
  add_config_flag(app, opt, "handelman-cap", "handelman_cap", "cofactor degree cap for Handelman search, 0 for 2d+4");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"table", "records"}))
      ->envname("DDEG_FORMAT");

  std::optional<std::string> map_arg, map_file;
  auto* compute = app.add_subcommand("compute", "dynamical degree of a map such as \"(x2, x1 + x2^2)\"");
  compute->add_option("map", map_arg, "endomorphism text");
  compute->add_option("--file", map_file, "read the map from a file, - for stdin");

  std::string kind;
  int degree = 1;
  auto* enumerate = app.add_subcommand("enumerate", "list dynamical degrees of a normal-form family up to degree d");
  enumerate->add_option("kind", kind, "theorem1 (alias affine-triangular) or shiftlike")
      ->required()
      ->check(CLI::IsMember({"theorem1", "affine-triangular", "shiftlike"}));
  enumerate->add_option("d", degree, "algebraic degree bound")->required()->check(CLI::PositiveNumber);

  std::string poly, root = "largest";
  std::optional<std::string> matrix;
  auto* classify = app.add_subcommand("classify", "Perron-type classification of a real algebraic integer");
  classify->add_option("polynomial", poly, "integer polynomial in x, or an integer")->required();
  classify->add_option("--root", root, "largest, or the index of a real root in increasing order");

  auto* realize = app.add_subcommand("realize", "automorphism realizing a weak Perron number as dynamical degree");
  realize->add_option("polynomial", poly, "integer polynomial in x, or an integer")->required();
  realize->add_option("--root", root, "largest, or the index of a real root in increasing order");
  realize->add_option("--matrix", matrix, "non-negative integer matrix witness, e.g. [[1,1],[1,2]]");

  long r = 1, s = 1, t = 1;
  auto* examplerst = app.add_subcommand("examplerst", "three-parameter family of automorphisms of A^3");
  examplerst->add_option("r", r)->required()->check(CLI::PositiveNumber);
  examplerst->add_option("s", s)->required()->check(CLI::PositiveNumber);
  examplerst->add_option("t", t)->required()->check(CLI::PositiveNumber);

  unsigned depth = 0;
  auto* oracle = app.add_subcommand("oracle", "degrees of the iterates and growth estimates");
  oracle->add_option("map", map_arg, "endomorphism text");
  oracle->add_option("--file", map_file, "read the map from a file, - for stdin");
  oracle->add_option("--depth", depth, "number of iterates (default: oracle depth)")->check(CLI::PositiveNumber);

  for (auto* sub : {compute, enumerate, classify, realize, examplerst, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  ddeg_config* cfg = ddeg_config_new();
  if (!cfg) return 4;
  for (const auto& [key, value] : opt.config) {
    if (ddeg_config_set(cfg, key.c_str(), value.c_str()) != DDEG_OK) {
      std::fprintf(stderr, "ddeg: %s\n", ddeg_last_error());
      ddeg_config_free(cfg);
      return 3;
    }
  }

  ddeg_result* res = nullptr;
  try {
    if (*compute) {
      std::string text = read_input(map_arg, map_file);
      ddeg_compute(cfg, text.c_str(), &res);
    } else if (*enumerate) {
      ddeg_enumerate(cfg, kind.c_str(), degree, &res);
    } else if (*classify) {
      ddeg_classify(cfg, poly.c_str(), root.c_str(), &res);
    } else if (*realize) {
      ddeg_realize(cfg, poly.c_str(), root.c_str(), matrix ? matrix->c_str() : nullptr, &res);
    } else if (*examplerst) {
      ddeg_examplerst(cfg, r, s, t, &res);
    } else if (*oracle) {
      std::string text = read_input(map_arg, map_file);
      if (depth == 0) {
        char buf[32];
        ddeg_config_get(cfg, "oracle_depth", buf, sizeof buf);
        depth = static_cast<unsigned>(std::stoul(buf));
      }
      ddeg_oracle(cfg, text.c_str(), depth, &res);
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "ddeg: %s\n", e.what());
    ddeg_config_free(cfg);
    return 3;
  }
  ddeg_config_free(cfg);

  if (!res) {
    std::fprintf(stderr, "ddeg: %s\n", ddeg_last_error());
    return 1;
  }
  int code = ddeg_result_exit_code(res);
  bool failed = code == 1 || code == 3;
  if (opt.format == "records") {
    std::fputs(ddeg_result_records(res), stdout);
  } else {
    std::fputs(ddeg_result_table(res), failed ? stderr : stdout);
  }
  ddeg_result_free(res);
  return code;
}

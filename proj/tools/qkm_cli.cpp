// qkm: command-line front end.  Everything goes through the C API in qkm.h;
// this translation unit never touches the C++ core directly.

#include "qkm.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input,
// 3 request refused by a cost guard, 4 internal error.
int status_to_exit(qkm_status st) {
  switch (st) {
    case QKM_OK:
      return 0;
    case QKM_ERR_INVALID:
      return 2;
    case QKM_ERR_COST:
      return 3;
    default:
      return 4;
  }
}

int report_error(qkm_status st) {
  std::cerr << "error: " << qkm_last_error() << "\n";
  return status_to_exit(st);
}

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  *out = buf.str();
  return true;
}

struct VerifyArgs {
  std::string matrix_path;
  int degree = 2;
  int box = 1;
  int modes = 2;
  int workers = 1;
  std::string relations;
  std::string json_out;
  bool with_identities = false;
  bool mutate_flip_half_power = false;
};

int run_verify(const VerifyArgs& a) {
  std::string doc;
  if (!read_file(a.matrix_path, &doc)) {
    std::cerr << "error: cannot open '" << a.matrix_path << "'\n";
    return 2;
  }
  qkm_cartan* cartan = nullptr;
  qkm_status st = qkm_cartan_from_json(doc.c_str(), &cartan);
  if (st != QKM_OK) return report_error(st);

  qkm_report* rep = nullptr;
  st = qkm_suite_run(cartan, a.degree, a.box, a.modes,
                     a.relations.empty() ? nullptr : a.relations.c_str(),
                     a.workers, a.with_identities ? 1 : 0,
                     a.mutate_flip_half_power ? 1 : 0, &rep);
  qkm_cartan_destroy(cartan);
  if (st != QKM_OK) return report_error(st);

  int rc = qkm_report_all_pass(rep) ? 0 : 1;
  if (a.json_out == "-") {
    char* json = nullptr;
    st = qkm_report_json(rep, &json);
    if (st != QKM_OK) {
      qkm_report_destroy(rep);
      return report_error(st);
    }
    std::fputs(json, stdout);
    qkm_string_free(json);
  } else {
    char* text = nullptr;
    st = qkm_report_text(rep, &text);
    if (st != QKM_OK) {
      qkm_report_destroy(rep);
      return report_error(st);
    }
    std::fputs(text, stdout);
    qkm_string_free(text);
    if (!a.json_out.empty()) {
      char* json = nullptr;
      st = qkm_report_json(rep, &json);
      if (st != QKM_OK) {
        qkm_report_destroy(rep);
        return report_error(st);
      }
      std::ofstream out(a.json_out, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << a.json_out << "'\n";
        qkm_string_free(json);
        qkm_report_destroy(rep);
        return 2;
      }
      out << json;
      qkm_string_free(json);
    }
  }
  qkm_report_destroy(rep);
  return rc;
}

int run_identity(const std::string& name, int size) {
  int holds = 0;
  char* message = nullptr;
  qkm_status st = qkm_identity_check(name.c_str(), size, &holds, &message);
  if (st != QKM_OK) return report_error(st);
  std::cout << (holds ? "PASS" : "FAIL") << " " << name << " (n=" << size
            << "): " << (message ? message : "") << "\n";
  qkm_string_free(message);
  return holds ? 0 : 1;
}

int run_hl(const std::string& lambda, int vars, const std::string& expand_path) {
  char* text = nullptr;
  qkm_status st;
  if (!expand_path.empty()) {
    std::string doc;
    if (!read_file(expand_path, &doc)) {
      std::cerr << "error: cannot open '" << expand_path << "'\n";
      return 2;
    }
    st = qkm_hl_expand_text(doc.c_str(), &text);
  } else {
    st = qkm_hl_poly_text(lambda.c_str(), vars, &text);
  }
  if (st != QKM_OK) return report_error(st);
  std::fputs(text, stdout);
  if (expand_path.empty()) std::fputc('\n', stdout);
  qkm_string_free(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact verifier for the level-one vertex-operator relation suite of a "
      "symmetric generalized Cartan matrix, with Hall-Littlewood and "
      "q-series identity checks.\n"
      "Exit codes: 0 pass, 1 check failed, 2 bad input, 3 cost guard, "
      "4 internal error."};
  app.require_subcommand(1);

  VerifyArgs v;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the relation suite for a Cartan matrix");
  verify
      ->add_option("matrix", v.matrix_path,
                   "JSON file: {\"rank\": 2, \"matrix\": [[2,-1],[-1,2]]}")
      ->required();
  verify->add_option("--degree", v.degree, "Heisenberg degree cap")
      ->capture_default_str();
  verify->add_option("--box", v.box, "lattice window radius (sup norm)")
      ->capture_default_str();
  verify->add_option("--modes", v.modes, "operator modes run over [-N, N]")
      ->capture_default_str();
  verify->add_option(
      "--relations", v.relations,
      "comma-separated subset of OPE,R2,R4,R5,R6,R7,R8,SERRE,T3 (default all)");
  verify->add_option("--workers", v.workers, "worker threads")
      ->capture_default_str();
  verify->add_flag("--with-identities", v.with_identities,
                   "also run the standalone identity fragments");
  verify->add_option("--json-out", v.json_out,
                     "write the JSON report to this file ('-' prints JSON "
                     "instead of text)");
  verify
      ->add_flag("--mutate-flip-half-power", v.mutate_flip_half_power,
                 "soundness probe: flip the half-power normalization (the "
                 "suite must fail)")
      ->group("");  // hidden

  std::string id_name;
  int id_size = 0;
  CLI::App* identity = app.add_subcommand(
      "identity", "Check one named identity family at a given size");
  identity
      ->add_option("--name", id_name,
                   "one of ser2, ser3, serre-coeff, binom, diff")
      ->required();
  identity->add_option("--m", id_size, "size parameter (variables / order)")
      ->required();

  std::string hl_lambda;
  int hl_vars = 2;
  std::string hl_expand_path;
  CLI::App* hl = app.add_subcommand(
      "hl", "Print a Hall-Littlewood polynomial or expand in the basis");
  CLI::Option* opt_lambda = hl->add_option(
      "--lambda", hl_lambda, "partition, e.g. \"2,1\" (\"0\" for empty)");
  CLI::Option* opt_vars =
      hl->add_option("--vars", hl_vars, "number of variables")
          ->capture_default_str();
  CLI::Option* opt_expand = hl->add_option(
      "--expand-file", hl_expand_path,
      "JSON file {\"vars\": m, \"terms\": [{\"exp\": [...], \"coeff\": "
      "[[half_exponent, \"p/q\"], ...]}, ...]} to expand");
  opt_lambda->excludes(opt_expand);
  opt_vars->needs(opt_lambda);

  int diff_n = 4;
  CLI::App* diff = app.add_subcommand(
      "diff", "Verify the q-difference lemmas up to a given order");
  diff->add_option("--n-max", diff_n, "highest order")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (verify->parsed()) return run_verify(v);
  if (identity->parsed()) return run_identity(id_name, id_size);
  if (hl->parsed()) {
    if (hl_lambda.empty() && hl_expand_path.empty() &&
        opt_lambda->count() == 0) {
      std::cerr << "error: hl needs --lambda or --expand-file\n";
      return 2;
    }
    return run_hl(hl_lambda, hl_vars, hl_expand_path);
  }
  if (diff->parsed()) return run_identity("diff", diff_n);
  return 2;
}

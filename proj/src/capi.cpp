// C binding over the C++ core: opaque handles, status codes, thread-local
// error text.  Every entry point traps exceptions at the language boundary.

#include "qkm.h"

#include "qkm/harness.hpp"
#include "qkm/identities.hpp"
#include "qkm/lattice.hpp"
#include "qkm/qfuncs.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

struct qkm_cartan {
  qkm::CartanData data;
};

struct qkm_report {
  qkm::Report report;
};

namespace {

constexpr int kMaxRank = 16;
constexpr int kMaxSymmetrizeVars = 6;
constexpr int kMaxOrder = 64;
constexpr int kMaxDiffOrder = 12;
constexpr int kMaxHlVars = 8;
constexpr int kMaxHlDegree = 24;
constexpr std::size_t kWitnessCap = 600;

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

qkm_status fail(qkm_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

std::string clip(std::string text) {
  if (text.size() > kWitnessCap) {
    text.resize(kWitnessCap);
    text += " ...";
  }
  return text;
}

// Runs `fn` with the thread-local error cleared, translating exceptions into
// status codes at the C boundary.
template <typename Fn>
qkm_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const qkm::CostGuardError& e) {
    return fail(QKM_ERR_COST, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(QKM_ERR_INVALID, e.what());
  } catch (const std::domain_error& e) {
    return fail(QKM_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(QKM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QKM_ERR_INTERNAL, "unknown error");
  }
}

std::vector<std::string> parse_relations_csv(const char* csv) {
  if (csv == nullptr || *csv == '\0') return qkm::default_relations();
  std::vector<std::string> tags;
  std::istringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    auto b = token.find_first_not_of(" \t");
    auto e = token.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw std::invalid_argument("relations: empty tag in '" +
                                  std::string(csv) + "'");
    token = token.substr(b, e - b + 1);
    for (char& c : token)
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    tags.push_back(token);
  }
  if (tags.empty())
    throw std::invalid_argument("relations: empty list");
  return tags;
}

std::string lower(const char* s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

extern "C" {

qkm_status qkm_cartan_create(const int* entries, int rank, qkm_cartan** out) {
  return guarded([&]() -> qkm_status {
    if (entries == nullptr || out == nullptr)
      return fail(QKM_ERR_INVALID, "qkm_cartan_create: NULL argument");
    if (rank < 1)
      return fail(QKM_ERR_INVALID, "qkm_cartan_create: rank must be >= 1");
    if (rank > kMaxRank)
      return fail(QKM_ERR_COST,
                  "qkm_cartan_create: rank exceeds the built-in limit of " +
                      std::to_string(kMaxRank));
    std::vector<std::vector<int>> m(rank, std::vector<int>(rank));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) m[i][j] = entries[i * rank + j];
    *out = new qkm_cartan{qkm::CartanData(std::move(m))};
    return QKM_OK;
  });
}

qkm_status qkm_cartan_from_json(const char* json_text, qkm_cartan** out) {
  return guarded([&]() -> qkm_status {
    if (json_text == nullptr || out == nullptr)
      return fail(QKM_ERR_INVALID, "qkm_cartan_from_json: NULL argument");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(QKM_ERR_INVALID,
                  std::string("qkm_cartan_from_json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("matrix") ||
        !doc["matrix"].is_array())
      return fail(QKM_ERR_INVALID,
                  "qkm_cartan_from_json: expected an object with a "
                  "\"matrix\" array of rows");
    const auto& rows = doc["matrix"];
    const int rank = static_cast<int>(rows.size());
    if (rank < 1)
      return fail(QKM_ERR_INVALID, "qkm_cartan_from_json: matrix is empty");
    if (doc.contains("rank") &&
        (!doc["rank"].is_number_integer() || doc["rank"].get<int>() != rank))
      return fail(QKM_ERR_INVALID,
                  "qkm_cartan_from_json: \"rank\" does not match the "
                  "matrix dimensions");
    if (rank > kMaxRank)
      return fail(QKM_ERR_COST,
                  "qkm_cartan_from_json: rank exceeds the built-in limit "
                  "of " +
                      std::to_string(kMaxRank));
    std::vector<std::vector<int>> m;
    m.reserve(rank);
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != rank)
        return fail(QKM_ERR_INVALID,
                    "qkm_cartan_from_json: matrix rows must all have "
                    "length " +
                        std::to_string(rank));
      std::vector<int> r;
      r.reserve(rank);
      for (const auto& v : row) {
        if (!v.is_number_integer())
          return fail(QKM_ERR_INVALID,
                      "qkm_cartan_from_json: matrix entries must be "
                      "integers");
        r.push_back(v.get<int>());
      }
      m.push_back(std::move(r));
    }
    *out = new qkm_cartan{qkm::CartanData(std::move(m))};
    return QKM_OK;
  });
}

int qkm_cartan_rank(const qkm_cartan* cartan) {
  return cartan == nullptr ? -1 : cartan->data.rank();
}

void qkm_cartan_destroy(qkm_cartan* cartan) { delete cartan; }

qkm_status qkm_suite_run(const qkm_cartan* cartan, int degree_cap,
                         int lattice_box, int mode_range,
                         const char* relations_csv, int workers,
                         int include_identities, int mutate_flip_half_power,
                         qkm_report** out) {
  return guarded([&]() -> qkm_status {
    if (cartan == nullptr || out == nullptr)
      return fail(QKM_ERR_INVALID, "qkm_suite_run: NULL argument");
    qkm::SuiteConfig cfg{cartan->data};
    cfg.degree_cap = degree_cap;
    cfg.lattice_box = lattice_box;
    cfg.mode_range = mode_range;
    cfg.relations = parse_relations_csv(relations_csv);
    cfg.workers = workers;
    cfg.include_identities = include_identities != 0;
    cfg.vertex_options.flip_half_power = mutate_flip_half_power != 0;
    qkm::Report rep = qkm::run_suite(cfg);
    *out = new qkm_report{std::move(rep)};
    return QKM_OK;
  });
}

int qkm_report_all_pass(const qkm_report* report) {
  return (report != nullptr && report->report.all_pass()) ? 1 : 0;
}

qkm_status qkm_report_json(const qkm_report* report, char** out) {
  return guarded([&]() -> qkm_status {
    if (report == nullptr || out == nullptr)
      return fail(QKM_ERR_INVALID, "qkm_report_json: NULL argument");
    *out = dup_string(report->report.to_json());
    return QKM_OK;
  });
}

qkm_status qkm_report_text(const qkm_report* report, char** out) {
  return guarded([&]() -> qkm_status {
    if (report == nullptr || out == nullptr)
      return fail(QKM_ERR_INVALID, "qkm_report_text: NULL argument");
    *out = dup_string(report->report.to_text());
    return QKM_OK;
  });
}

void qkm_report_destroy(qkm_report* report) { delete report; }

qkm_status qkm_identity_check(const char* name, int n, int* holds,
                              char** message) {
  return guarded([&]() -> qkm_status {
    if (name == nullptr || holds == nullptr)
      return fail(QKM_ERR_INVALID, "qkm_identity_check: NULL argument");
    const std::string id = lower(name);
    if (n < 1)
      return fail(QKM_ERR_INVALID,
                  "qkm_identity_check: size must be >= 1, got " +
                      std::to_string(n));

    bool ok = false;
    std::string text;
    if (id == "ser2") {
      if (n > kMaxSymmetrizeVars)
        return fail(QKM_ERR_COST,
                    "ser2: symmetrization over more than " +
                        std::to_string(kMaxSymmetrizeVars) +
                        " variables is refused");
      qkm::MultiPoly p = qkm::ser2_expression(n);
      ok = p.is_zero();
      text = ok ? "symmetrized kernel sum is identically zero on " +
                      std::to_string(n) + " variable(s)"
                : "nonzero remainder: " + clip(p.to_string());
    } else if (id == "ser3") {
      if (n > kMaxSymmetrizeVars)
        return fail(QKM_ERR_COST,
                    "ser3: symmetrization over more than " +
                        std::to_string(kMaxSymmetrizeVars) +
                        " variables is refused");
      std::string witness;
      ok = qkm::ser3_check(n, &witness);
      text = ok ? "bar variant vanishes and matches the bar image on " +
                      std::to_string(n) + " variable(s)"
                : clip(witness);
    } else if (id == "serre-coeff") {
      if (n > kMaxOrder)
        return fail(QKM_ERR_COST, "serre-coeff: order above " +
                                      std::to_string(kMaxOrder) +
                                      " is refused");
      std::string witness;
      ok = qkm::serre_coefficient_check(n, &witness);
      text = ok ? "constant-term factorization verified for m = " +
                      std::to_string(n)
                : clip(witness);
    } else if (id == "binom") {
      if (n > kMaxOrder)
        return fail(QKM_ERR_COST, "binom: order above " +
                                      std::to_string(kMaxOrder) +
                                      " is refused");
      ok = true;
      for (int k = 1; k <= n && ok; ++k) {
        std::string witness;
        if (!qkm::q_binom_theorem_check(k, &witness) ||
            !qkm::q_binom_vanishing_check(k, &witness)) {
          ok = false;
          text = "order " + std::to_string(k) + ": " + clip(witness);
        }
      }
      if (ok)
        text = "q-binomial theorem and vanishing evaluation verified for "
               "orders 1.." +
               std::to_string(n);
    } else if (id == "diff") {
      if (n > kMaxDiffOrder)
        return fail(QKM_ERR_COST, "diff: order above " +
                                      std::to_string(kMaxDiffOrder) +
                                      " is refused");
      std::string witness;
      ok = qkm::diff_lemma_suite(n, &witness);
      text = ok ? "q-difference lemmas verified up to order " +
                      std::to_string(n)
                : clip(witness);
    } else {
      return fail(QKM_ERR_INVALID,
                  "qkm_identity_check: unknown identity '" + id +
                      "' (expected ser2, ser3, serre-coeff, binom, diff)");
    }

    *holds = ok ? 1 : 0;
    if (message != nullptr) *message = dup_string(text);
    return QKM_OK;
  });
}

qkm_status qkm_hl_poly_text(const char* lambda_csv, int num_vars, char** out) {
  return guarded([&]() -> qkm_status {
    if (lambda_csv == nullptr || out == nullptr)
      return fail(QKM_ERR_INVALID, "qkm_hl_poly_text: NULL argument");
    if (num_vars > kMaxHlVars)
      return fail(QKM_ERR_COST, "qkm_hl_poly_text: more than " +
                                    std::to_string(kMaxHlVars) +
                                    " variables is refused");
    qkm::Partition lambda = qkm::Partition::parse(lambda_csv);
    if (lambda.size() > kMaxHlDegree)
      return fail(QKM_ERR_COST, "qkm_hl_poly_text: partition weight above " +
                                    std::to_string(kMaxHlDegree) +
                                    " is refused");
    *out = dup_string(qkm::hl_poly(lambda, num_vars).to_string());
    return QKM_OK;
  });
}

qkm_status qkm_hl_expand_text(const char* terms_json, char** out) {
  return guarded([&]() -> qkm_status {
    if (terms_json == nullptr || out == nullptr)
      return fail(QKM_ERR_INVALID, "qkm_hl_expand_text: NULL argument");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(terms_json);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(QKM_ERR_INVALID,
                  std::string("qkm_hl_expand_text: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vars") ||
        !doc["vars"].is_number_integer() || !doc.contains("terms") ||
        !doc["terms"].is_array())
      return fail(QKM_ERR_INVALID,
                  "qkm_hl_expand_text: expected {\"vars\": m, \"terms\": "
                  "[...]}");
    const int vars = doc["vars"].get<int>();
    if (vars < 1)
      return fail(QKM_ERR_INVALID, "qkm_hl_expand_text: vars must be >= 1");
    if (vars > kMaxHlVars)
      return fail(QKM_ERR_COST, "qkm_hl_expand_text: more than " +
                                    std::to_string(kMaxHlVars) +
                                    " variables is refused");

    qkm::MultiPoly p(vars);
    for (const auto& term : doc["terms"]) {
      if (!term.is_object() || !term.contains("exp") ||
          !term["exp"].is_array() ||
          static_cast<int>(term["exp"].size()) != vars ||
          !term.contains("coeff") || !term["coeff"].is_array())
        return fail(QKM_ERR_INVALID,
                    "qkm_hl_expand_text: each term needs \"exp\" (length "
                    "vars) and \"coeff\"");
      qkm::ExpVec exps;
      int degree = 0;
      for (const auto& e : term["exp"]) {
        if (!e.is_number_integer())
          return fail(QKM_ERR_INVALID,
                      "qkm_hl_expand_text: exponents must be integers");
        exps.push_back(e.get<int>());
        degree += e.get<int>();
      }
      if (degree > kMaxHlDegree)
        return fail(QKM_ERR_COST,
                    "qkm_hl_expand_text: total degree above " +
                        std::to_string(kMaxHlDegree) + " is refused");
      exps.push_back(0);  // auxiliary slot unused by symmetric inputs
      qkm::QScalar coeff;
      for (const auto& pair : term["coeff"]) {
        if (!pair.is_array() || pair.size() != 2 ||
            !pair[0].is_number_integer() || !pair[1].is_string())
          return fail(QKM_ERR_INVALID,
                      "qkm_hl_expand_text: \"coeff\" entries must be "
                      "[half_exponent, \"rational\"] pairs");
        mpq_class r;
        if (r.set_str(pair[1].get<std::string>(), 10) != 0)
          return fail(QKM_ERR_INVALID,
                      "qkm_hl_expand_text: bad rational '" +
                          pair[1].get<std::string>() + "'");
        r.canonicalize();
        coeff += qkm::QScalar::term(r, pair[0].get<int>());
      }
      p += qkm::MultiPoly::monomial(vars, exps, coeff);
    }

    std::map<qkm::Partition, qkm::QScalar> expansion =
        qkm::hl_expand(p, vars);
    std::string text;
    for (auto it = expansion.rbegin(); it != expansion.rend(); ++it) {
      text += it->first.to_string();
      text += ": ";
      text += it->second.to_string();
      text += '\n';
    }
    if (text.empty()) text = "0\n";
    *out = dup_string(text);
    return QKM_OK;
  });
}

const char* qkm_last_error(void) { return g_last_error.c_str(); }

void qkm_string_free(char* s) { std::free(s); }

}  // extern "C"

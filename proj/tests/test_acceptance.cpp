// Acceptance gate.  Each criterion of the library's verification contract is
// run at exact (zero) tolerance and reported as a single [PASS]/[FAIL] line,
// with per-matrix detail lines underneath.  The process exits nonzero if any
// criterion fails.

#include "qkm/fock.hpp"
#include "qkm/harness.hpp"
#include "qkm/identities.hpp"
#include "qkm/lattice.hpp"
#include "qkm/multipoly.hpp"
#include "qkm/qfuncs.hpp"
#include "qkm/qscalar.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using qkm::CartanData;
using qkm::MultiPoly;
using qkm::Partition;
using qkm::QScalar;
using qkm::RelationReport;
using qkm::SuiteConfig;

namespace {

int g_failures = 0;

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

void criterion(const std::string& name,
               const std::function<void(std::vector<std::string>&)>& body) {
  std::vector<std::string> notes;
  auto t0 = std::chrono::steady_clock::now();
  std::string failure;
  try {
    body(notes);
  } catch (const std::exception& e) {
    failure = e.what();
  }
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  if (failure.empty()) {
    std::printf("[PASS] %-52s (%8.2f s)\n", name.c_str(), dt.count());
  } else {
    ++g_failures;
    std::printf("[FAIL] %-52s (%8.2f s)\n", name.c_str(), dt.count());
    std::printf("         reason: %s\n", failure.c_str());
  }
  for (const auto& n : notes) std::printf("         %s\n", n.c_str());
  std::fflush(stdout);
}

std::string matrix_text(const CartanData& C) {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < C.rank(); ++i) {
    if (i) out << ",";
    out << "[";
    for (int j = 0; j < C.rank(); ++j) {
      if (j) out << ",";
      out << C.entry(i, j);
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

SuiteConfig desk_config(const CartanData& C,
                        const std::vector<std::string>& relations) {
  SuiteConfig cfg{C};
  cfg.degree_cap = 2;
  cfg.lattice_box = 1;
  cfg.mode_range = 2;
  cfg.relations = relations;
  return cfg;
}

std::vector<Partition> partitions_up_to(int max_size, int max_length) {
  std::vector<Partition> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    out.emplace_back(Partition(parts));
    if (remaining == 0 || static_cast<int>(parts.size()) == max_length)
      return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  rec(rec, max_size, max_size);
  return out;
}

// Independent Schur oracle: bialternant ratio of the shifted monomial
// antisymmetrization by the Vandermonde determinant.
MultiPoly schur_poly(const Partition& lambda, int m) {
  qkm::ExpVec exps(m + 1, 0);
  for (int k = 0; k < m; ++k) {
    int part = k < lambda.length() ? lambda.parts()[k] : 0;
    exps[k] = part + m - 1 - k;
  }
  MultiPoly numerator =
      MultiPoly::monomial(m, exps, QScalar(1)).antisymmetrize();
  return exact_divide_poly(numerator, qkm::vandermonde(m));
}

void expect_constant(const RelationReport& frag, const std::string& key,
                     const std::string& expected, const std::string& where) {
  auto it = frag.resolved_constants.find(key);
  require(it != frag.resolved_constants.end(),
          where + ": missing resolved constant '" + key + "'");
  require(it->second == expected, where + ": resolved constant '" + key +
                                      "' = '" + it->second +
                                      "', pinned value '" + expected + "'");
}

CartanData mat(std::vector<std::vector<int>> rows) {
  return CartanData(std::move(rows));
}

const CartanData kA1 = mat({{2}});
const CartanData kA2 = mat({{2, -1}, {-1, 2}});
const CartanData kAff2 = mat({{2, -2}, {-2, 2}});
const CartanData kHyp3 = mat({{2, -3}, {-3, 2}});
const CartanData kOrth2 = mat({{2, 0}, {0, 2}});
// Rank-3 mix containing pairings 0, -2, and -3 at once, used to confirm the
// resolved prefactors do not depend on which matrix a pairing sits in.
const CartanData kMixed23 = mat({{2, 0, -2}, {0, 2, -3}, {-2, -3, 2}});

void run_all_criteria() {
  criterion("symmetrized kernel identity, m = 1..5", [](auto& notes) {
    for (int m = 1; m <= 5; ++m) {
      MultiPoly p = qkm::ser2_expression(m);
      require(p.is_zero(),
              "nonzero remainder at m = " + std::to_string(m));
    }
    notes.push_back("alternating sum over S_m expands to 0 exactly");
  });

  criterion("bar-variant kernel identity, m = 1..5", [](auto& notes) {
    for (int m = 1; m <= 5; ++m) {
      std::string witness;
      require(qkm::ser3_check(m, &witness),
              "m = " + std::to_string(m) + ": " + witness);
    }
    notes.push_back(
        "denominator-cleared variant vanishes and equals the bar image");
  });

  criterion("q-binomial theorem and vanishing, n <= 10", [](auto& notes) {
    for (int n = 1; n <= 10; ++n) {
      std::string witness;
      require(qkm::q_binom_theorem_check(n, &witness),
              "theorem at n = " + std::to_string(n) + ": " + witness);
      require(qkm::q_binom_vanishing_check(n, &witness),
              "vanishing at n = " + std::to_string(n) + ": " + witness);
    }
    notes.push_back("finite product expansion and zero evaluations exact");
  });

  criterion("q-difference lemmas up to order 8", [](auto& notes) {
    std::string witness;
    require(qkm::diff_lemma_suite(8, &witness), witness);
    notes.push_back(
        "derivative of the q-shifted binomial and the iterate formula, on "
        "binomials and monomials x^k, k <= 8");
  });

  criterion("relation suite R2,R4,R5,R6,R7,R8 on four matrices",
            [](auto& notes) {
              const std::vector<std::string> rels{"R2", "R4", "R5",
                                                  "R6", "R7", "R8"};
              for (const CartanData& C : {kA1, kA2, kAff2, kHyp3}) {
                auto t0 = std::chrono::steady_clock::now();
                qkm::Report rep = qkm::run_suite(desk_config(C, rels));
                std::chrono::duration<double> dt =
                    std::chrono::steady_clock::now() - t0;
                for (const auto& frag : rep.fragments)
                  require(frag.pass,
                          frag.relation + " failed on " + matrix_text(C) +
                              (frag.witnesses.empty()
                                   ? ""
                                   : ": " + frag.witnesses[0].operator_word));
                std::ostringstream note;
                note << matrix_text(C) << ": " << rep.total_instances()
                     << " instances, " << std::fixed
                     << std::setprecision(1) << dt.count() << " s";
                notes.push_back(note.str());
              }
            });

  criterion("Serre relation mode-wise, m = 1..4", [](auto& notes) {
    struct Case {
      const CartanData* C;
      int m;
    };
    for (const Case& c : {Case{&kOrth2, 1}, Case{&kA2, 2}, Case{&kAff2, 3},
                          Case{&kHyp3, 4}}) {
      auto t0 = std::chrono::steady_clock::now();
      SuiteConfig cfg = desk_config(*c.C, {"SERRE"});
      RelationReport frag = qkm::verify_relation(cfg, "SERRE");
      std::chrono::duration<double> dt =
          std::chrono::steady_clock::now() - t0;
      const std::string where =
          "m = " + std::to_string(c.m) + " on " + matrix_text(*c.C);
      require(frag.pass, "SERRE failed at " + where);
      require(frag.instances_checked > 0, "no instances at " + where);

      // at least 5 mode tuples per ordered pair, zero tuple included
      std::string zero_tuple = "(";
      for (int k = 0; k < c.m; ++k) zero_tuple += (k ? ",0" : "0");
      zero_tuple += "|0)";
      for (const char* key : {"tuples(i=1,j=2)", "tuples(i=2,j=1)"}) {
        auto it = frag.resolved_constants.find(key);
        require(it != frag.resolved_constants.end(),
                std::string("missing '") + key + "' at " + where);
        long tuples = 1;
        for (size_t pos = 0; (pos = it->second.find("; ", pos)) !=
                             std::string::npos;
             pos += 2)
          ++tuples;
        require(tuples >= 5, std::string("fewer than 5 tuples in '") + key +
                                 "' at " + where);
        require(it->second.find(zero_tuple) != std::string::npos,
                "all-zero mode tuple missing from '" + std::string(key) +
                    "' at " + where);
      }
      std::ostringstream note;
      note << "m = " << c.m << " on " << matrix_text(*c.C) << ": "
           << frag.instances_checked << " instances (6 tuples x 2 signs), "
           << std::fixed << std::setprecision(1) << dt.count()
           << " s";
      notes.push_back(note.str());
    }
  });

  criterion("q-commutation relation: all cases, pinned prefactors",
            [](auto& notes) {
              const std::string kResM3Pole = "q^{0}";
              const std::string kResM3 = "1";
              const std::string kResM4Poles = "q^{-1}, q^{1}";
              const std::string kResM4Lo = "(1*q^1)/(1 + -1*q^2)";
              const std::string kResM4Hi = "(-1*q^1)/(1 + -1*q^2)";

              auto run_t3 = [](const CartanData& C, int cap, int box,
                               int modes) {
                SuiteConfig cfg{C};
                cfg.degree_cap = cap;
                cfg.lattice_box = box;
                cfg.mode_range = modes;
                cfg.relations = {"T3"};
                RelationReport frag = qkm::verify_relation(cfg, "T3");
                require(frag.pass, "T3 failed on " + matrix_text(C) +
                                       (frag.witnesses.empty()
                                            ? ""
                                            : ": " +
                                                  frag.witnesses[0]
                                                      .operator_word));
                require(frag.instances_checked > 0,
                        "no instances on " + matrix_text(C));
                return frag;
              };

              RelationReport orth = run_t3(kOrth2, 2, 1, 2);
              expect_constant(orth, "case(i=1,j=2)", "commuting (a = 0)",
                              "orthogonal pair");

              RelationReport a2 = run_t3(kA2, 2, 1, 2);
              expect_constant(a2, "case(i=1,j=2)",
                              "two-term q-commutation (a = -1), right side "
                              "zero",
                              "pairing -1");

              RelationReport aff = run_t3(kAff2, 2, 1, 2);
              expect_constant(aff, "poles(i=1,j=2)", kResM3Pole,
                              "pairing -2");
              expect_constant(aff, "residue(i=1,j=2)[q^{0}]", kResM3,
                              "pairing -2");

              RelationReport hyp = run_t3(kHyp3, 2, 1, 2);
              expect_constant(hyp, "poles(i=1,j=2)", kResM4Poles,
                              "pairing -3");
              expect_constant(hyp, "residue(i=1,j=2)[q^{-1}]", kResM4Lo,
                              "pairing -3");
              expect_constant(hyp, "residue(i=1,j=2)[q^{1}]", kResM4Hi,
                              "pairing -3");

              // same pairings inside a different (rank-3) matrix resolve to
              // the identical constants
              RelationReport mix = run_t3(kMixed23, 1, 1, 1);
              expect_constant(mix, "case(i=1,j=2)", "commuting (a = 0)",
                              "rank-3 mix");
              expect_constant(mix, "poles(i=1,j=3)", kResM3Pole,
                              "rank-3 mix");
              expect_constant(mix, "residue(i=1,j=3)[q^{0}]", kResM3,
                              "rank-3 mix");
              expect_constant(mix, "poles(i=2,j=3)", kResM4Poles,
                              "rank-3 mix");
              expect_constant(mix, "residue(i=2,j=3)[q^{-1}]", kResM4Lo,
                              "rank-3 mix");
              expect_constant(mix, "residue(i=2,j=3)[q^{1}]", kResM4Hi,
                              "rank-3 mix");

              notes.push_back(
                  "cases: commuting, two-term with zero right side, residue "
                  "sums over 1 and 2 delta supports");
              notes.push_back("pinned residues stable across matrices: 1 and "
                              "+/- q/(1 - q^2)");
            });

  criterion("Hall-Littlewood: values, expansion, Schur limit",
            [](auto& notes) {
              require(qkm::hl_poly(Partition({1}), 2).to_string() ==
                          "z1 + z2",
                      "P(1) in two variables");
              require(qkm::hl_poly(Partition({1, 1}), 2).to_string() ==
                          "z1 z2",
                      "P(1,1) in two variables");
              require(qkm::hl_poly(Partition({2}), 2).to_string() ==
                          "z1^2 + (1 + -1*q^2)*z1 z2 + z2^2",
                      "P(2) in two variables");

              long reconstructed = 0;
              for (int m = 1; m <= 4; ++m)
                for (const Partition& lambda : partitions_up_to(5, m)) {
                  auto expansion =
                      qkm::hl_expand(qkm::hl_poly(lambda, m), m);
                  require(expansion.size() == 1 &&
                              expansion.begin()->first == lambda &&
                              expansion.begin()->second == QScalar(1),
                          "expansion of P(" + lambda.to_string() + ") in " +
                              std::to_string(m) + " variables is not the "
                              "unit vector");
                  ++reconstructed;
                }

              // a mixed combination with nontrivial coefficients
              const QScalar c1 = QScalar(1) + QScalar::q_power(4);
              const QScalar c2 = QScalar::term(qkm::Rational(3, 2), -2);
              const QScalar c3 = QScalar(-7);
              MultiPoly mixed = qkm::hl_poly(Partition({2, 1}), 3) * c1 +
                                qkm::hl_poly(Partition({1, 1, 1}), 3) * c2 +
                                qkm::hl_poly(Partition({3}), 3) * c3;
              auto expansion = qkm::hl_expand(mixed, 3);
              require(expansion.size() == 3 &&
                          expansion.at(Partition({2, 1})) == c1 &&
                          expansion.at(Partition({1, 1, 1})) == c2 &&
                          expansion.at(Partition({3})) == c3,
                      "mixed expansion does not return its coefficients");

              long schur_checked = 0;
              for (int m = 2; m <= 4; ++m)
                for (const Partition& lambda : partitions_up_to(4, m)) {
                  require(qkm::hl_schur_limit(qkm::hl_poly(lambda, m)) ==
                              schur_poly(lambda, m),
                          "Schur limit mismatch at P(" + lambda.to_string() +
                              ") in " + std::to_string(m) + " variables");
                  ++schur_checked;
                }

              notes.push_back(std::to_string(reconstructed) +
                              " basis elements round-trip through expansion "
                              "(|lambda| <= 5, <= 4 variables)");
              notes.push_back(std::to_string(schur_checked) +
                              " Schur specializations match the bialternant "
                              "(|lambda| <= 4)");
            });

  criterion("mutation soundness: flipped half-power fails", [](auto& notes) {
    SuiteConfig cfg = desk_config(kA1, {"R6", "R8", "SERRE"});
    cfg.vertex_options.flip_half_power = true;
    qkm::Report rep = qkm::run_suite(cfg);
    require(!rep.all_pass(), "mutated suite unexpectedly passed");
    std::string failing;
    bool witnessed = false;
    for (const auto& frag : rep.fragments)
      if (!frag.pass) {
        failing += (failing.empty() ? "" : ", ") + frag.relation;
        witnessed = witnessed || !frag.witnesses.empty();
      }
    require(witnessed, "failing fragments carry no witnesses");
    notes.push_back("failing fragments: " + failing +
                    " (witnesses recorded)");
  });
}

}  // namespace

int main() {
  std::printf("acceptance gate: exact verification contract\n");
  std::printf("scale: degree_cap 2, lattice_box 1, mode_range 2 unless "
              "noted\n\n");
  auto t0 = std::chrono::steady_clock::now();
  run_all_criteria();
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  std::printf("\n");
  if (g_failures == 0) {
    std::printf("ACCEPTANCE PASS: 9 of 9 criteria (%.1f s)\n", dt.count());
    return 0;
  }
  std::printf("ACCEPTANCE FAIL: %d criterion(s) failed (%.1f s)\n",
              g_failures, dt.count());
  return 1;
}

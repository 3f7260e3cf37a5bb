#pragma once

// Relation-verification suites: every defining relation of the q-affinized
// algebra, the operator-product identities, and the same-sign commutation
// theorem, executed as exact equality checks on enumerated Fock vectors.
// Failures become report witnesses, never exceptions; reports serialize to
// canonical text and JSON and are byte-stable across worker counts.

#include "qkm/lattice.hpp"
#include "qkm/vertex.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkm {

// Thrown when a requested check exceeds the desk-scale cost bounds; what()
// names the bound and how to get back under it.
class CostGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All supported relation tags, in canonical report order.
std::vector<std::string> default_relations();

struct SuiteConfig {
  CartanData cartan;
  int degree_cap = 2;
  int lattice_box = 1;
  int mode_range = 2;  // operator modes run over [-mode_range, mode_range]
  std::vector<std::string> relations = default_relations();
  int workers = 1;
  bool include_identities = false;
  VertexOptions vertex_options;

  // Throws std::invalid_argument naming the violated invariant.
  void validate() const;
};

struct Witness {
  std::string operator_word;
  std::string basis_key;
  std::string expected;
  std::string actual;
};

struct RelationReport {
  std::string relation;
  long instances_checked = 0;
  bool pass = true;
  std::vector<Witness> witnesses;  // first failures in enumeration order
  std::map<std::string, std::string> resolved_constants;
};

struct Report {
  std::vector<RelationReport> fragments;  // sorted by relation tag
  double wall_seconds = 0.0;

  bool all_pass() const;
  long total_instances() const;
  // Stable schema: {"all_pass", "fragments": [{relation, instances_checked,
  // status, witnesses[], resolved_constants{}}], "wall_seconds"}.  Identical
  // configs produce identical JSON up to wall_seconds.
  std::string to_json() const;
  std::string to_text() const;
};

// Deterministic Serre mode tuples for arity m: each tuple holds the m modes
// of the repeated generator followed by the lone mode of the other one, all
// clamped to [-mode_range, mode_range].  Includes the all-zero tuple, whose
// instances restrict the relation to the underlying non-affinized
// generators.
std::vector<std::vector<long>> default_serre_tuples(int m, int mode_range);

// One relation across all root indices within cfg's bounds.  Valid tags are
// the entries of default_relations(); SERRE and T3 fan out over all ordered
// (resp. unordered) pairs of distinct indices.
RelationReport verify_relation(const SuiteConfig& cfg,
                               const std::string& which);

// The higher q-commutator vanishing for the pair (i, j): for every mode
// tuple, sign, and basis vector, the alternating [m; r]-weighted sum over
// insertion positions and permutations annihilates the vector.  Throws
// CostGuardError when m = 1 - a_ij > 4.
RelationReport verify_serre(const SuiteConfig& cfg, int i, int j,
                            const std::vector<std::vector<long>>& mode_tuples);

// Same-sign commutation for the pair (i, j), split on a = (alpha_i|alpha_j):
// plain commutation for a = 0, the two-term q-commutation for a = -1, and
// for a <= -2 the q-commutation against the partial-fraction residue sum of
// the contraction denominator; the resolved poles and residues are recorded
// in the fragment's constants.
RelationReport verify_t3(const SuiteConfig& cfg, int i, int j);

// Runs every requested relation, appending the polynomial-identity suites
// (SER2, SER3, BINOM, DIFF) when cfg.include_identities is set, and merges
// the fragments in canonical tag order.
Report run_suite(const SuiteConfig& cfg);

}  // namespace qkm

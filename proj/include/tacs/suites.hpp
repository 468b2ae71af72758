#pragma once

// Law verification suites over random corpora.  Each suite draws its cases
// deterministically from (seed, case index), checks one bundle of laws, and
// reports every violation with the offending terms and a replay command.
// Cases are independent, so the runner may spread them across threads; the
// report is identical for any thread count.
//
//   sos-laws            maximal progress, time determinism, type-1 steps are
//                       type-2 steps, guardedness preservation, and the
//                       substitution/transition exchange law
//   sigma2-transitivity type-2 time steps compose
//   coherence           every type-2 step is covered by the type-1 step plus
//                       the syntactic order; accepted strong witnesses also
//                       validate against the combined clauses
//   succ-soundness      time steps land in the syntactic order; the order
//                       only ever grows urgent sets
//   coincidence-naive   naive verdicts agree across semantics
//   coincidence-delayed delayed verdicts agree across semantics and with naive
//   coincidence-strong  strong verdicts agree across semantics and with
//                       combined
//   indexed-baseline    indexed type-1 verdicts at auto cap equal naive
//   containment         strong implies naive, naive implies delayed, strong
//                       witnesses validate as combined, and the syntactic
//                       order restricted to a state space validates as a
//                       naive and strong witness

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tacs {

struct SuiteConfig {
  std::uint64_t seed{7};
  std::size_t cases{100};
  std::size_t budget{10};
  std::size_t state_limit{2000};
  std::size_t config_limit{20000000};
  int threads{1};  // 1 = serial, 0 = all cores, n = exactly n
};

struct SuiteViolation {
  std::size_t case_index{0};
  std::string property;  // short id of the violated law
  std::string detail;    // offending terms and values
  std::string replay;    // command line reproducing the case
};

struct SuiteReport {
  std::string name;
  std::size_t cases{0};
  std::size_t skipped{0};  // cases abandoned on a state or config limit
  std::vector<SuiteViolation> violations;  // ordered by case index
  double wall_seconds{0.0};

  bool passed() const { return violations.empty(); }
};

const std::vector<std::string>& suite_names();

// Throws UnknownSuite for names outside suite_names().
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace tacs

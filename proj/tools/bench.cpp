// Compares the serial reference kernels against their parallel variants on a
// family of growing instances.  The parallel paths must reproduce the serial
// results bit for bit; any divergence fails the run.  Wall times and speedups
// are printed for eyeballing, not asserted.

#include <chrono>
#include <iostream>
#include <string>

#include "tacs/preorder.hpp"
#include "tacs/semantics.hpp"
#include "tacs/suites.hpp"
#include "tacs/syntax.hpp"
#include "tacs/term.hpp"

namespace {

using namespace tacs;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sigmas(std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += "s.";
  return out;
}

// The loop family: the fast side runs its a- and b-loops undelayed, the slow
// side pads every loop with n clock prefixes.  Pair universes grow with
// (n+1)^3, which makes the sweep kernel sweat without exploding.
std::string fast_side(std::size_t n) {
  return "rec x. a.x | rec x. b.x | (rec x. " + sigmas(n) + "c.x | rec x. " + sigmas(n) +
         "'c.x) \\ {c}";
}
std::string slow_side(std::size_t n) {
  return "rec x. " + sigmas(n) + "a.x | rec x. " + sigmas(n) + "b.x | (rec x. " + sigmas(n) +
         "c.x | rec x. " + sigmas(n) + "'c.x) \\ {c}";
}

bool same_steps(const Refutation& a, const Refutation& b) {
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const RefutationStep &x = a.steps[i], &y = b.steps[i];
    if (x.p != y.p || x.q != y.q || x.credit != y.credit || x.clause != y.clause ||
        x.attacker_is_p != y.attacker_is_p || x.clock_move != y.clock_move ||
        x.action != y.action || x.attacker_target != y.attacker_target ||
        x.terminal != y.terminal || x.reason != y.reason ||
        x.defender_target != y.defender_target || x.defender_credit != y.defender_credit ||
        x.credit_move != y.credit_move)
      return false;
  }
  return true;
}

bool identical(const CheckVerdict& a, const CheckVerdict& b) {
  if (a.holds != b.holds || a.stats.pairs != b.stats.pairs || a.stats.rounds != b.stats.rounds ||
      a.stats.configs != b.stats.configs)
    return false;
  if (a.holds) return a.witness->entries == b.witness->entries;
  return same_steps(*a.refutation, *b.refutation);
}

bool bench_checks() {
  bool ok = true;
  // Indexed gets a fixed cap: under FullProduct an automatic cap would put
  // |pairs|+1 credit levels on every pair, and the point here is sweep
  // throughput, not cap resolution.
  const RelationKind kinds[] = {RelationKind::naive(SemanticsType::Type1),
                                RelationKind::combined(),
                                RelationKind::indexed(SemanticsType::Type2, 6)};
  for (std::size_t n = 1; n <= 4; ++n) {
    TermFactory f;
    Semantics sem(f);
    Process p = std::get<Process>(validate_process(f, *parse(f, fast_side(n)).term));
    Process q = std::get<Process>(validate_process(f, *parse(f, slow_side(n)).term));
    for (const RelationKind& kind : kinds) {
      CheckPolicy serial, parallel;
      serial.threads = 1;
      parallel.threads = 0;
      // FullProduct stresses the sweep with every state pair, not just the
      // game-reachable ones.
      serial.universe = parallel.universe = UniverseMode::FullProduct;

      auto t0 = std::chrono::steady_clock::now();
      CheckVerdict a = check(sem, p, q, kind, 100000, serial);
      double ts = seconds_since(t0);
      t0 = std::chrono::steady_clock::now();
      CheckVerdict b = check(sem, p, q, kind, 100000, parallel);
      double tp = seconds_since(t0);

      bool same = identical(a, b);
      ok = ok && same;
      std::cout << "check " << to_string(a.kind) << " n=" << n << ": pairs=" << a.stats.pairs
                << " rounds=" << a.stats.rounds << " serial=" << ts << "s parallel=" << tp
                << "s speedup=" << (tp > 0 ? ts / tp : 0) << " identical=" << (same ? "yes" : "NO")
                << "\n";
    }
  }
  return ok;
}

bool same_report(const SuiteReport& a, const SuiteReport& b) {
  if (a.skipped != b.skipped || a.violations.size() != b.violations.size()) return false;
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    const SuiteViolation &x = a.violations[i], &y = b.violations[i];
    if (x.case_index != y.case_index || x.property != y.property || x.detail != y.detail)
      return false;
  }
  return true;
}

bool bench_suites() {
  bool ok = true;
  for (const char* name : {"coincidence-naive", "sos-laws"}) {
    SuiteConfig serial, parallel;
    serial.cases = parallel.cases = 80;
    serial.threads = 1;
    parallel.threads = 0;
    SuiteReport a = run_suite(name, serial);
    SuiteReport b = run_suite(name, parallel);
    bool same = same_report(a, b);
    ok = ok && same;
    std::cout << "suite " << name << ": cases=" << a.cases << " serial=" << a.wall_seconds
              << "s parallel=" << b.wall_seconds << "s speedup="
              << (b.wall_seconds > 0 ? a.wall_seconds / b.wall_seconds : 0)
              << " identical=" << (same ? "yes" : "NO") << "\n";
  }
  return ok;
}

}  // namespace

int main() {
  bool ok = bench_checks();
  ok = bench_suites() && ok;
  if (!ok) {
    std::cerr << "parallel results diverged from the serial reference\n";
    return 1;
  }
  return 0;
}

#pragma once

// Random term corpus.  Every output of generate_process validates as a
// process: variables are only emitted under an action prefix inside their
// binder, recursions never nest, and restriction/relabelling draw from a
// small fixed alphabet.  Generation is a pure function of (cfg, index); the
// same inputs rebuild the same term in any factory, so corpus cases can be
// reproduced from a seed alone.

#include <cstddef>
#include <cstdint>

#include "tacs/term.hpp"

namespace tacs {

struct GeneratorConfig {
  std::uint64_t seed{0};
  std::size_t budget{10};   // maximum node count
  std::size_t alphabet{3};  // visible names a, b, c, ...
};

TermId generate_process(TermFactory& f, const GeneratorConfig& cfg, std::uint64_t index);

// Like generate_process but the term may mention the given variable free; all
// its occurrences sit under an action prefix (so it is guarded).  Used to
// exercise laws about substitution, which are stated on open terms.
TermId generate_open_term(TermFactory& f, const GeneratorConfig& cfg, std::uint64_t index,
                          NameId free_var);

// Structural copy of t with extra clock prefixes sprinkled in front of random
// subterms; the result is slower than t but functionally equivalent.
TermId insert_clock_prefixes(TermFactory& f, TermId t, std::uint64_t seed);

bool contains_clock_prefix(const TermFactory& f, TermId t);

}  // namespace tacs

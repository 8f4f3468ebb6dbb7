#pragma once

#include <random>

#include "oncat/module_ops.hpp"

namespace oncat {

/// Random extension 0 -> A -> E -> B -> 0: the connecting blocks are sampled
/// from the exact solution space of the nilpotency/commutation constraints,
/// so the result always validates. Prefers a nonzero cocycle when one exists.
ModulePtr random_extension(const ModulePtr& A, const ModulePtr& B, std::mt19937_64& rng);

/// Random module built as an iterated extension of shifted standard pieces
/// (trivial modules and strings); always valid.
ModulePtr random_module(const StructurePtr& s, std::mt19937_64& rng, long target_dim,
                        long shift_window);

/// Random member of the tensor ideal: iterated extensions of shifted strings
/// V_k{b} with varying k (a filtration certificate exists by construction).
ModulePtr random_ideal_member(const StructurePtr& s, std::mt19937_64& rng, long target_dim,
                              long shift_window);

/// Random element of Hom^degree(M, N); nullopt when the hom space is zero.
std::optional<ModuleMap> random_hom(const ModulePtr& M, const ModulePtr& N, long degree,
                                    std::mt19937_64& rng);

}  // namespace oncat

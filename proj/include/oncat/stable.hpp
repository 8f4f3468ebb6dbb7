#pragma once

#include "oncat/module_ops.hpp"

namespace oncat {

/// Decomposition M = H_n^{f(nu)} + reduced with no projective summand left:
/// the integral Lambda acts by zero on `reduced`. The witness maps are
/// mutually inverse degree-0 intertwiners between M and the decomposition
/// module (free summands first, reduced part last).
struct StrippedModule {
    LaurentPolynomial free_multiplicity;
    ModulePtr reduced;
    ModulePtr decomposition;
    std::shared_ptr<const ModuleMap> to_decomposition;    // M -> decomposition
    std::shared_ptr<const ModuleMap> from_decomposition;  // decomposition -> M
};

ModulePtr zero_module(const StructurePtr& s);

/// Splits off free summands generated by vectors not killed by Lambda;
/// the cyclic module over such a vector is free of rank one and injective,
/// so the inclusion splits by an exact linear solve.
StrippedModule strip_projectives(const ModulePtr& M);

/// The canonical embedding rho_M : M -> (M (x) H_n){ell}, m -> m (x) Lambda.
ModuleMap rho_map(const ModulePtr& M);

/// Basis of { Lambda . g : g in Hom^{degree - ell}(M, N) } inside
/// Hom_{H_n}^degree(M, N), computed from the coproduct of the braided
/// integral. Every returned map is a verified intertwiner.
std::vector<ModuleMap> null_homotopic_basis(const ModulePtr& M, const ModulePtr& N, long degree);

struct StableHom {
    std::vector<ModuleMap> total;           // basis of Hom_{H_n}^0(M, N)
    std::vector<ModuleMap> null_homotopic;  // basis of Lambda . Hom^{-ell}(M, N)
    long stable_dimension = 0;
};
StableHom stable_hom(const ModulePtr& M, const ModulePtr& N);

/// M[1] up to projective summands: cokernel of rho_M, stripped.
ModulePtr shift_plus(const ModulePtr& M);
/// M[-1] via duality: dual(shift_plus(dual(M))).
ModulePtr shift_minus(const ModulePtr& M);
/// Iterated homological shift (times may be negative). The input is stripped
/// first so the result is always reduced.
ModulePtr shift_stable(const ModulePtr& M, long times);

/// Cone of a degree-0 intertwiner f : M -> N, as the pushout
/// ((M (x) H){ell} + N) / (rho(m), -f(m)). Not stripped.
ModulePtr cone(const ModuleMap& f);

}  // namespace oncat

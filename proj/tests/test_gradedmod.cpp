#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oncat/module_ops.hpp"
#include "oracles.hpp"

using namespace oncat;

namespace {

CyclotomicNumber cyc(const StructurePtr& s, long v) {
    return CyclotomicNumber(s->field(), mpq_class(v));
}

}  // namespace

TEST_CASE("exact linear algebra primitives") {
    auto f = CyclotomicField::get(6);
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<long> dim(1, 6);
    auto rand_cyc = [&] {
        return CyclotomicNumber(f, mpq_class(val(rng))) +
               CyclotomicNumber::zeta_power(f, 1) * mpq_class(val(rng));
    };
    for (int trial = 0; trial < 40; ++trial) {
        long r = dim(rng), c = dim(rng);
        Matrix A(f, r, c);
        SparseMatrix As(r, c);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j) {
                if (val(rng) > 0) continue;  // keep it sparse
                A.at(i, j) = rand_cyc();
                As.add(i, j, A.at(i, j));
            }
        // kernel vectors really lie in the kernel, and count matches rank
        auto ker = kernel_basis(As, f);
        for (auto& v : ker) {
            auto img = A.apply(v);
            for (auto& x : img) CHECK(x.is_zero());
        }
        CHECK(static_cast<long>(ker.size()) == c - matrix_rank(A));
        // solve A x = A x0 and check the residual
        CycVector x0(c, CyclotomicNumber::zero(f));
        for (auto& x : x0) x = rand_cyc();
        auto b = A.apply(x0);
        auto sol = solve_linear(As, b, f);
        REQUIRE(sol.has_value());
        auto b2 = A.apply(*sol);
        for (long i = 0; i < r; ++i) CHECK(b2[i] == b[i]);
    }
    // inconsistent system
    SparseMatrix bad(2, 1);
    bad.add(0, 0, CyclotomicNumber::one(f));
    bad.add(1, 0, CyclotomicNumber::one(f));
    CycVector rhs{CyclotomicNumber::one(f), -CyclotomicNumber::one(f)};
    CHECK_FALSE(solve_linear(bad, rhs, f).has_value());

    // inverse on random invertible matrices
    for (int trial = 0; trial < 20; ++trial) {
        long n = dim(rng);
        Matrix A = Matrix::identity(f, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                if (i != j && val(rng) > 1) A.at(i, j) = rand_cyc();
        auto inv = inverse_matrix(A);
        REQUIRE(inv.has_value());
        CHECK((A * *inv) == Matrix::identity(f, n));
    }
    CHECK_FALSE(inverse_matrix(Matrix(f, 2, 2)).has_value());
}

TEST_CASE("validate standard modules and negative controls") {
    auto s = HnStructure::make(6);

    auto k = trivial_module(s);
    CHECK(k->total_dim() == 1);
    CHECK(k->graded_dim() == LaurentPolynomial::one());
    CHECK(trivial_module(s, 3)->graded_dim() == LaurentPolynomial::nu(-3));

    auto H = free_module(s);
    CHECK(H->total_dim() == 6);
    CHECK(H->graded_dim() == s->graded_dim());

    auto v2 = string_module(s, 1);
    CHECK(v2->graded_dim() == LaurentPolynomial::parse("1 + v^2 + v^4"));
    auto v1 = string_module(s, 0);
    CHECK(v1->graded_dim() == LaurentPolynomial::parse("1 + v^3"));
    CHECK_THROWS_AS(string_module(s, 5), std::invalid_argument);

    // negative control: a d_1 block with the wrong degree step
    RawModule bad;
    bad.structure = s;
    bad.dims = {{0, 1}, {1, 1}};
    bad.actions.assign(2, {});
    Matrix one(s->field(), 1, 1);
    one.at(0, 0) = CyclotomicNumber::one(s->field());
    bad.actions[0].emplace(0, one);  // d_1 must raise degree by 3, target missing
    CHECK_THROWS_AS(GradedModule::validate(bad), ValidationError);

    // negative control: nilpotency violation d_1^2 != 0
    RawModule bad2;
    bad2.structure = s;
    bad2.dims = {{0, 1}, {3, 1}, {6, 1}};
    bad2.actions.assign(2, {});
    bad2.actions[0].emplace(0, one);
    bad2.actions[0].emplace(3, one);
    try {
        GradedModule::validate(bad2);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.kind == ValidationError::Kind::NilpotencyViolation);
        CHECK(e.k == 0);
    }

    // negative control: commutation violation
    RawModule bad3;
    bad3.structure = s;
    bad3.dims = {{0, 1}, {2, 1}, {3, 1}, {5, 1}};
    bad3.actions.assign(2, {});
    bad3.actions[0].emplace(0, one);   // d1: 0 -> 3
    bad3.actions[0].emplace(2, one);   // d1: 2 -> 5
    bad3.actions[1].emplace(0, one);   // d2: 0 -> 2
    Matrix zero(s->field(), 1, 1);
    bad3.actions[1].emplace(3, zero);  // d2: 3 -> 5 is zero: [d1,d2] != 0
    try {
        GradedModule::validate(bad3);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.kind == ValidationError::Kind::CommutationViolation);
    }
}

TEST_CASE("example modules reproduce the hand-drawn diagrams") {
    auto s = HnStructure::make(6);
    auto V = example_module_V(s);
    CHECK(V->graded_dim() == LaurentPolynomial::parse("1 + v + v^2 + v^3 + v^4 + v^5"));
    auto Vp = example_module_Vprime(s);
    CHECK(Vp->graded_dim() == LaurentPolynomial::parse("1 + v^2 + v^3 + v^4 + v^5 + v^7"));
    auto Vpp = example_module_Vdoubleprime(s);
    CHECK(Vpp->graded_dim() == LaurentPolynomial::parse("v^-1 + 1 + v + v^2 + v^3 + v^4"));
    CHECK_THROWS_AS(example_module_V(HnStructure::make(4)), std::invalid_argument);

    auto s30 = HnStructure::make(30);
    auto W = example_module_three_primes(s30);
    CHECK(W->total_dim() == 8);
    // F_1 = bottom V_3-string at degrees -24..0, F_2/F_1 = top V_2-string
    CHECK(W->dim(-15) == 1);
    CHECK(W->dim(0) == 1);
    CHECK_THROWS_AS(example_module_three_primes(s), std::invalid_argument);
}

TEST_CASE("shift, direct sum, submodule, quotient") {
    auto s = HnStructure::make(6);
    auto V = example_module_V(s);

    CHECK(shift_module(shift_module(V, 2), -2)->graded_dim() == V->graded_dim());
    CHECK(shift_module(V, 1)->graded_dim() == V->graded_dim() * LaurentPolynomial::nu(-1));

    auto sum = direct_sum(V, trivial_module(s));
    CHECK(sum->total_dim() == 7);
    CHECK(sum->graded_dim() == V->graded_dim() + LaurentPolynomial::one());

    // Example 4.9: the submodule generated by the degree-1 vector of V is the
    // shifted string V_2{-1}, and the quotient is V_2.
    CycVector gen{CyclotomicNumber::one(s->field())};
    auto sub = submodule(V, {{1, gen}});
    CHECK(sub.module->graded_dim() == LaurentPolynomial::parse("v + v^3 + v^5"));
    auto subiso = is_isomorphic(sub.module, string_module(s, 1, -1));
    CHECK(subiso.iso.has_value());

    auto quo = quotient(V, sub);
    CHECK(quo.module->graded_dim() == LaurentPolynomial::parse("1 + v^2 + v^4"));
    auto quoiso = is_isomorphic(quo.module, string_module(s, 1, 0));
    CHECK(quoiso.iso.has_value());

    // non-homogeneous / wrong-length generators rejected
    CycVector badgen{CyclotomicNumber::one(s->field()), CyclotomicNumber::one(s->field())};
    CHECK_THROWS_AS(submodule(V, {{1, badgen}}), ValidationError);
}

TEST_CASE("tensor products") {
    auto s = HnStructure::make(6);
    auto V = example_module_V(s);
    auto H = free_module(s);

    // unit law M (x) k{b} ~ shift(M, b)
    for (long b : {0L, 1L, -2L}) {
        auto T = tensor(V, trivial_module(s, b));
        CHECK(T->graded_dim() == shift_module(V, b)->graded_dim());
        auto iso = is_isomorphic(T, shift_module(V, b));
        CHECK(iso.iso.has_value());
    }
    CHECK(is_isomorphic(tensor(trivial_module(s), V), V).iso.has_value());

    // graded dimension is multiplicative
    auto T = tensor(V, H);
    CHECK(T->graded_dim() == V->graded_dim() * H->graded_dim());

    // both variants validate; same graded dimension
    auto Tq = tensor(V, V, TensorVariant::Q);
    auto Tqi = tensor(V, V, TensorVariant::QInverse);
    CHECK(Tq->graded_dim() == Tqi->graded_dim());

    CHECK_THROWS_AS(tensor(V, trivial_module(HnStructure::make(4))), ValidationError);
}

TEST_CASE("dual module") {
    auto s = HnStructure::make(6);

    for (long b : {0L, 2L, -1L}) {
        auto d = dual(trivial_module(s, b));
        CHECK(d->graded_dim() == trivial_module(s, -b)->graded_dim());
    }

    auto v2 = string_module(s, 1);
    auto dv2 = dual(v2);
    CHECK(dv2->graded_dim() == v2->graded_dim().substitute_power(-1));
    // dual of the string is the string re-shifted
    CHECK(is_isomorphic(dv2, string_module(s, 1, 4)).iso.has_value());

    auto V = example_module_V(s);
    CHECK(dual(V)->graded_dim() == V->graded_dim().substitute_power(-1));
    // (M*)* ~ M via the iso-solver
    CHECK(is_isomorphic(dual(dual(V)), V).iso.has_value());
}

TEST_CASE("internal hom: two realizations agree") {
    auto s = HnStructure::make(6);
    auto V = example_module_V(s);
    auto v2 = string_module(s, 1);
    auto k = trivial_module(s);

    // internal_hom(k, N) ~ N
    CHECK(is_isomorphic(internal_hom(k, V), V).iso.has_value());

    for (auto& [M, N] : std::vector<std::pair<ModulePtr, ModulePtr>>{
             {v2, v2}, {V, v2}, {v2, V}, {k, V}}) {
        auto theta = internal_hom_compatibility(M, N);
        CHECK(theta.is_intertwiner());
        CHECK(theta.inverse().has_value());
        CHECK(internal_hom(M, N)->graded_dim() ==
              M->graded_dim().substitute_power(-1) * N->graded_dim());
        // and via the generic solver on these small instances
        CHECK(is_isomorphic(internal_hom(M, N), internal_hom_blocks(M, N)).iso.has_value());
    }

    // identity is a degree-0 invariant vector of internal_hom(M, M)
    CHECK(invariant_dim(internal_hom_blocks(v2, v2), 0) >= 1);
}

TEST_CASE("hom spaces") {
    auto s = HnStructure::make(6);
    auto k = trivial_module(s);
    auto v2 = string_module(s, 1);
    auto H = free_module(s);

    CHECK(hom_space(k, k, 0).size() == 1);
    CHECK(hom_space(v2, v2, 0).size() == 1);
    CHECK(hom_space(k, H, 0).empty());  // socle of H sits in degree ell = 7 > 0

    // oracle: independent dense solve of the 3-dim commuting system for v2
    {
        auto field = s->field();
        // f = diag(c0, c1, c2) on degrees 0, 2, 4 with d2 f = f d2, d2 = identity arrows
        // => c0 = c1 = c2: dimension 1. Cross-check against the solver's basis.
        auto basis = hom_space(v2, v2, 0);
        REQUIRE(basis.size() == 1);
        const Matrix* b0 = basis[0].block(0);
        const Matrix* b2 = basis[0].block(2);
        const Matrix* b4 = basis[0].block(4);
        REQUIRE(b0);
        REQUIRE(b2);
        REQUIRE(b4);
        CHECK(b0->at(0, 0) == b2->at(0, 0));
        CHECK(b2->at(0, 0) == b4->at(0, 0));
    }

    // dim Hom^j(M, N) equals the dim of degree-j invariants of the internal hom
    auto V = example_module_V(s);
    for (auto& [M, N] : std::vector<std::pair<ModulePtr, ModulePtr>>{{v2, V}, {V, v2}, {V, V}}) {
        for (long j = -6; j <= 6; ++j) {
            long lhs = static_cast<long>(hom_space(M, N, j).size());
            CHECK(lhs == invariant_dim(internal_hom_blocks(M, N), j));
            CHECK(lhs == invariant_dim(internal_hom(M, N), j));
        }
    }

    // every basis element intertwines
    for (auto& f : hom_space(V, V, 0)) CHECK(f.is_intertwiner());
}

TEST_CASE("iso solver") {
    auto s = HnStructure::make(6);
    auto V = example_module_V(s);
    auto v1 = string_module(s, 0);
    auto v2 = string_module(s, 1);

    auto self = is_isomorphic(V, V);
    REQUIRE(self.iso.has_value());
    CHECK(self.iso->is_intertwiner());
    CHECK(self.iso->inverse().has_value());

    auto neg = is_isomorphic(v1, v2);
    CHECK_FALSE(neg.iso.has_value());
    CHECK(neg.certified_negative);  // graded dims differ

    // same graded dimension but not isomorphic: the d_1 ranks differ, and the
    // hom space is small enough for the deterministic grid certificate
    auto A = direct_sum(v1, shift_module(v1, -2));
    auto B = direct_sum(direct_sum(trivial_module(s, 0), trivial_module(s, -3)),
                        shift_module(v1, -2));
    CHECK(A->graded_dim() == B->graded_dim());
    auto res = is_isomorphic(A, B);
    CHECK_FALSE(res.iso.has_value());
    CHECK(res.certified_negative);
}

TEST_CASE("weak braiding") {
    auto s = HnStructure::make(6);
    auto field = s->field();

    // one-dimensional V, W in degrees i, j: the scalar is q^{-ij}
    for (long i : {0L, 1L, 2L})
        for (long j : {0L, 3L}) {
            auto V = trivial_module(s, -i);
            auto W = trivial_module(s, -j);
            auto psi = braiding_iso(V, W);
            const Matrix* b = psi.block(i + j);
            REQUIRE(b);
            CHECK(b->at(0, 0) == s->q_power(-i * j));
        }

    // trivial (x) trivial: identity scalar 1
    auto psi0 = braiding_iso(trivial_module(s), trivial_module(s));
    CHECK(psi0.block(0)->at(0, 0) == CyclotomicNumber::one(field));

    // braiding on example modules intertwines (verified in the constructor)
    auto V = example_module_V(s);
    auto v2 = string_module(s, 1);
    CHECK(braiding_iso(V, v2).is_intertwiner());
    CHECK(braiding_iso(v2, V).inverse().has_value());
}

TEST_CASE("associativity regrouping") {
    auto s = HnStructure::make(6);
    auto v1 = string_module(s, 0);
    auto v2 = string_module(s, 1);
    auto k1 = trivial_module(s, 1);
    auto f = associator(v1, v2, k1);
    CHECK(f.is_intertwiner());
    CHECK(f.inverse().has_value());
    auto g = associator(v2, v2, v1, TensorVariant::QInverse);
    CHECK(g.is_intertwiner());
}

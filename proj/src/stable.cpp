#include "oncat/stable.hpp"

#include "oncat/bosonization.hpp"

namespace oncat {

ModulePtr zero_module(const StructurePtr& s) {
    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    return GradedModule::validate(std::move(raw));
}

namespace {

// Position of the packed PBW index inside free_module's component at its
// degree (indices are listed ascending per degree).
long free_slot_position(const StructurePtr& s, long a_idx) {
    const auto& pbw = *s->pbw();
    long pos = 0;
    for (long a = 0; a < a_idx; ++a)
        if (pbw.degree[a] == pbw.degree[a_idx]) ++pos;
    return pos;
}

}  // namespace

ModuleMap rho_map(const ModulePtr& M) {
    const auto& s = M->structure();
    auto field = s->field();
    ModulePtr H = free_module(s);
    ModulePtr T = shift_module(tensor(M, H), s->ell());
    TensorLayout layout = tensor_layout(*M, *H);
    const long top = s->pbw()->top;
    const long top_pos = free_slot_position(s, top);

    ModuleMap rho(M, T, 0);
    for (auto& [i, d] : M->dims()) {
        // target component T^i = (M (x) H)^{i + ell}; m -> m (x) Lambda
        const TensorLayout::Slot* slot = layout.slot_at(i + s->ell(), i);
        if (!slot) throw std::logic_error("rho_map: missing tensor slot");
        Matrix block(field, T->dim(i), d);
        for (long c = 0; c < d; ++c)
            block.at(slot->offset + c * slot->ndim + top_pos, c) = CyclotomicNumber::one(field);
        rho.set_block(i, std::move(block));
    }
    if (!rho.is_intertwiner()) throw std::logic_error("rho_map: fails to intertwine");
    return rho;
}

StrippedModule strip_projectives(const ModulePtr& M) {
    const auto& s = M->structure();
    auto field = s->field();
    const long top = s->pbw()->top;
    const long ell = s->ell();

    // Generators of free summands: vectors whose Lambda-image is nonzero,
    // greedily chosen so the Lambda-images stay independent.
    std::map<long, RowSpace> image_spans;
    std::vector<std::pair<long, long>> gens;  // (degree, column)
    for (auto& [i, d] : M->dims()) {
        Matrix L = M->monomial_operator(top, i);
        if (L.rows() == 0 || L.is_zero()) continue;
        auto it = image_spans.find(i + ell);
        if (it == image_spans.end())
            it = image_spans.emplace(i + ell, RowSpace(field, M->dim(i + ell))).first;
        for (long c = 0; c < d; ++c)
            if (it->second.add(L.col(c))) gens.emplace_back(i, c);
    }

    StrippedModule out;
    if (gens.empty()) {
        out.free_multiplicity = LaurentPolynomial::zero();
        out.reduced = M;
        out.decomposition = M;
        auto id = std::make_shared<ModuleMap>(ModuleMap::identity(M));
        out.to_decomposition = id;
        out.from_decomposition = id;
        return out;
    }

    // F = direct sum of free modules H{-deg m_j}; iota : F -> M maps the PBW
    // basis of each summand to d^a m_j.
    ModulePtr F = free_module(s, -gens.front().first);
    for (size_t j = 1; j < gens.size(); ++j)
        F = direct_sum(F, free_module(s, -gens[j].first));

    ModuleMap iota(F, M, 0);
    {
        const auto& pbw = *s->pbw();
        std::map<long, Matrix> blocks;
        for (auto& [i, d] : F->dims()) blocks.emplace(i, Matrix(field, M->dim(i), d));
        // column offsets per degree accumulate over summands
        std::map<long, long> col_at;
        for (auto& [gdeg, gcol] : gens) {
            for (long a = 0; a < pbw.count(); ++a) {
                long target_deg = gdeg + pbw.degree[a];
                Matrix op = M->monomial_operator(a, gdeg);
                if (op.rows() == 0) throw std::logic_error("strip: free image escapes module");
                long col = col_at[target_deg]++;
                for (long r = 0; r < op.rows(); ++r) blocks.at(target_deg).at(r, col) = op.at(r, gcol);
            }
        }
        for (auto& [i, b] : blocks) iota.set_block(i, std::move(b));
    }
    if (!iota.is_intertwiner()) throw std::logic_error("strip: inclusion fails to intertwine");

    // Splitting pi : M -> F with pi iota = id, by one sparse solve: unknowns
    // are the blocks of pi, equations are the intertwining relations and the
    // section property.
    HomShape shape(*M, *F, 0);
    long eqs = 0;
    std::vector<std::tuple<int, long, long>> eq_idx;
    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        for (auto& [i, dsrc] : M->dims()) {
            long rows_out = F->dim(i + nk);
            if (rows_out == 0) continue;
            eq_idx.emplace_back(k, i, eqs);
            eqs += rows_out * dsrc;
        }
    }
    long sec_off = eqs;
    for (auto& [i, d] : F->dims()) eqs += d * d;
    SparseMatrix sys(eqs, shape.total);
    CycVector rhs(eqs, CyclotomicNumber::zero(field));
    for (auto& [k, i, off] : eq_idx) {
        const long nk = s->n_k(k);
        long rows_out = F->dim(i + nk);
        long dsrc = M->dim(i);
        if (const HomShape::Piece* p = shape.piece_at(i)) {
            if (F->has_action(k, i)) {
                const Matrix& D = F->action(k, i);
                for (long a = 0; a < rows_out; ++a)
                    for (long r = 0; r < D.cols(); ++r) {
                        if (D.at(a, r).is_zero()) continue;
                        for (long b = 0; b < dsrc; ++b)
                            sys.add(off + a * dsrc + b, p->offset + r * p->cols + b, D.at(a, r));
                    }
            }
        }
        if (const HomShape::Piece* p = shape.piece_at(i + nk)) {
            if (M->has_action(k, i)) {
                const Matrix& S = M->action(k, i);
                for (long a = 0; a < rows_out; ++a)
                    for (long ss = 0; ss < S.rows(); ++ss)
                        for (long b = 0; b < dsrc; ++b) {
                            if (S.at(ss, b).is_zero()) continue;
                            sys.add(off + a * dsrc + b, p->offset + a * p->cols + ss, -S.at(ss, b));
                        }
            }
        }
    }
    // section: pi * iota = id_F
    {
        long off = sec_off;
        for (auto& [i, d] : F->dims()) {
            const Matrix* inc = iota.block(i);
            const HomShape::Piece* p = shape.piece_at(i);
            if (!inc || !p) throw std::logic_error("strip: missing inclusion block");
            for (long a = 0; a < d; ++a)
                for (long b = 0; b < d; ++b) {
                    for (long m = 0; m < inc->rows(); ++m)
                        if (!inc->at(m, b).is_zero())
                            sys.add(off + a * d + b, p->offset + a * p->cols + m, inc->at(m, b));
                    if (a == b) rhs[off + a * d + b] = CyclotomicNumber::one(field);
                }
            off += d * d;
        }
    }
    auto sol = solve_linear(sys, rhs, field);
    if (!sol) throw std::logic_error("strip: splitting system is inconsistent");
    ModuleMap pi = ModuleMap::from_coords(M, F, 0, *sol);
    if (!pi.is_intertwiner()) throw std::logic_error("strip: projection fails to intertwine");

    // Complement = ker pi, degreewise.
    std::vector<std::pair<long, CycVector>> ker_gens;
    for (auto& [i, d] : M->dims()) {
        long fdim = F->dim(i);
        SparseMatrix blk(fdim, d);
        if (const Matrix* b = pi.block(i))
            for (long r = 0; r < b->rows(); ++r)
                for (long c = 0; c < b->cols(); ++c)
                    if (!b->at(r, c).is_zero()) blk.add(r, c, b->at(r, c));
        for (auto& v : kernel_basis(blk, field)) ker_gens.emplace_back(i, v);
    }
    Submodule comp = submodule(M, ker_gens);

    // Recurse on the complement; one batch is expected to strip everything.
    StrippedModule rec = strip_projectives(comp.module);

    out.free_multiplicity = rec.free_multiplicity;
    for (auto& [gdeg, gcol] : gens) out.free_multiplicity += LaurentPolynomial::nu(gdeg);
    out.reduced = rec.reduced;
    out.decomposition = direct_sum(F, rec.decomposition);

    // forward: M -> F + rec.decomposition, stacking pi over rec.fwd . rho
    // where rho : M -> comp expresses x - iota pi x in the complement basis.
    ModuleMap to_comp(M, comp.module, 0);
    for (auto& [i, d] : M->dims()) {
        long cdim = comp.module->dim(i);
        if (cdim == 0) continue;
        const Matrix* basis = comp.inclusion->block(i);
        if (!basis) throw std::logic_error("strip: missing complement basis");
        SparseMatrix sysb(M->dim(i), cdim);
        for (long r = 0; r < basis->rows(); ++r)
            for (long c = 0; c < basis->cols(); ++c)
                if (!basis->at(r, c).is_zero()) sysb.add(r, c, basis->at(r, c));
        Matrix blk(field, cdim, d);
        for (long c = 0; c < d; ++c) {
            CycVector e(M->dim(i), CyclotomicNumber::zero(field));
            e[c] = CyclotomicNumber::one(field);
            CycVector residue = e;
            CycVector pim = pi.apply(i, e);
            if (!pim.empty()) {
                CycVector back = iota.apply(i, pim);
                for (long r = 0; r < M->dim(i); ++r) residue[r] -= back[r];
            }
            auto x = solve_linear(sysb, residue, field);
            if (!x) throw std::logic_error("strip: residue outside complement");
            for (long r = 0; r < cdim; ++r) blk.at(r, c) = (*x)[r];
        }
        to_comp.set_block(i, std::move(blk));
    }

    ModuleMap fwd(M, out.decomposition, 0);
    ModuleMap comp_fwd = rec.to_decomposition->compose(to_comp);  // M -> rec.decomposition
    for (auto& [i, d] : M->dims()) {
        long total = out.decomposition->dim(i);
        if (total == 0) continue;
        Matrix blk(field, total, d);
        long fdim = F->dim(i);
        if (const Matrix* a = pi.block(i))
            for (long r = 0; r < a->rows(); ++r)
                for (long c = 0; c < a->cols(); ++c) blk.at(r, c) = a->at(r, c);
        if (const Matrix* a = comp_fwd.block(i))
            for (long r = 0; r < a->rows(); ++r)
                for (long c = 0; c < a->cols(); ++c) blk.at(fdim + r, c) = a->at(r, c);
        fwd.set_block(i, std::move(blk));
    }

    ModuleMap bwd(out.decomposition, M, 0);
    ModuleMap comp_bwd = comp.inclusion->compose(*rec.from_decomposition);
    for (auto& [i, total] : out.decomposition->dims()) {
        long mdim = M->dim(i);
        if (mdim == 0) throw std::logic_error("strip: decomposition exceeds module");
        Matrix blk(field, mdim, total);
        long fdim = F->dim(i);
        if (const Matrix* a = iota.block(i))
            for (long r = 0; r < a->rows(); ++r)
                for (long c = 0; c < a->cols(); ++c) blk.at(r, c) = a->at(r, c);
        if (const Matrix* a = comp_bwd.block(i))
            for (long r = 0; r < a->rows(); ++r)
                for (long c = 0; c < a->cols(); ++c) blk.at(r, fdim + c) = a->at(r, c);
        bwd.set_block(i, std::move(blk));
    }

    if (!fwd.is_intertwiner() || !bwd.is_intertwiner())
        throw std::logic_error("strip: witness maps fail to intertwine");
    if (!(fwd.compose(bwd) == ModuleMap::identity(out.decomposition)) ||
        !(bwd.compose(fwd) == ModuleMap::identity(M)))
        throw std::logic_error("strip: witness maps are not mutually inverse");

    // dim_nu(M) = f(nu) dim_nu(H_n) + dim_nu(reduced), with f counting free
    // generators by degree
    if (M->graded_dim() !=
        out.free_multiplicity * s->graded_dim() + out.reduced->graded_dim())
        throw std::logic_error("strip: graded dimension bookkeeping failed");

    out.to_decomposition = std::make_shared<ModuleMap>(std::move(fwd));
    out.from_decomposition = std::make_shared<ModuleMap>(std::move(bwd));
    return out;
}

std::vector<ModuleMap> null_homotopic_basis(const ModulePtr& M, const ModulePtr& N, long degree) {
    check_same_structure(*M, *N);
    const auto& s = M->structure();
    auto field = s->field();
    const auto& A = bosonization_for(s);
    const long ell = s->ell();
    const long top = s->pbw()->top;

    // Lambda . g assembled from Delta(Lambda) = sum_b C_b d^b K^{w_b} (x) d^{top-b}:
    // (Lambda . g)[i] = sum_b C_b sigma_b q^{u_b i} E_{top-b}[i+deg b+degree-ell] g[i+deg b] D_b[i]
    // with S^{-1}(d^b K^{w_b}) = sigma_b d^b K^{u_b}.
    struct Term {
        long b_idx, rest_idx, deg_b, u;
        CyclotomicNumber coeff;  // C_b * sigma_b
    };
    std::vector<Term> terms;
    for (const auto& t : A.coproduct_terms(top)) {
        auto img = A.antipode_inv_monomial(A.flat(t.b_idx, t.w));
        if (A.a_of(img.key) != t.b_idx)
            throw std::logic_error("null_homotopic: unexpected antipode-inverse shape");
        terms.push_back(Term{t.b_idx, t.rest_idx, s->pbw()->degree[t.b_idx], A.k_of(img.key),
                             t.coeff * img.coeff});
    }

    HomShape gshape(*M, *N, degree - ell);
    HomShape out_shape(*M, *N, degree);
    if (gshape.total == 0 || out_shape.total == 0) return {};

    RowSpace span(field, out_shape.total);
    std::vector<ModuleMap> basis;
    for (auto& gp : gshape.pieces) {
        // elementary g = E_{r,c} at source degree gp.i
        for (long r = 0; r < gp.rows; ++r)
            for (long c = 0; c < gp.cols; ++c) {
                ModuleMap lam_g(M, N, degree);
                std::map<long, Matrix> blocks;
                for (const Term& t : terms) {
                    long i = gp.i - t.deg_b;  // g[i + deg b] must be the gp block
                    if (M->dim(i) == 0 || N->dim(i + degree) == 0) continue;
                    Matrix D = M->monomial_operator(t.b_idx, i);
                    if (D.rows() == 0) continue;
                    Matrix E = N->monomial_operator(t.rest_idx, gp.i + degree - ell);
                    if (E.rows() == 0) continue;
                    CyclotomicNumber scale = t.coeff * s->q_power(t.u * i);
                    // contribution: scale * E e_r (row c of D)
                    auto [it, inserted] = blocks.try_emplace(
                        i, Matrix(field, N->dim(i + degree), M->dim(i)));
                    for (long rr = 0; rr < E.rows(); ++rr) {
                        if (E.at(rr, r).is_zero()) continue;
                        CyclotomicNumber f = scale * E.at(rr, r);
                        for (long cc = 0; cc < D.cols(); ++cc)
                            if (!D.at(c, cc).is_zero()) it->second.at(rr, cc) += f * D.at(c, cc);
                    }
                }
                for (auto& [i, b] : blocks)
                    if (!b.is_zero()) lam_g.set_block(i, std::move(b));
                if (lam_g.is_zero()) continue;
                if (!lam_g.is_intertwiner())
                    throw std::logic_error("null_homotopic: Lambda-image fails to intertwine");
                if (span.add(lam_g.to_coords())) basis.push_back(std::move(lam_g));
            }
    }
    return basis;
}

StableHom stable_hom(const ModulePtr& M, const ModulePtr& N) {
    StableHom out;
    out.total = hom_space(M, N, 0);
    out.null_homotopic = null_homotopic_basis(M, N, 0);
    // null-homotopic maps are intertwiners, so they lie in the span of total;
    // assert the containment exactly.
    RowSpace span(M->structure()->field(), HomShape(*M, *N, 0).total);
    for (auto& f : out.total) span.add(f.to_coords());
    for (auto& f : out.null_homotopic)
        if (!span.contains(f.to_coords()))
            throw std::logic_error("stable_hom: null map outside the hom space");
    out.stable_dimension =
        static_cast<long>(out.total.size()) - static_cast<long>(out.null_homotopic.size());
    return out;
}

ModulePtr shift_plus(const ModulePtr& M) {
    if (M->is_zero_module()) return M;
    ModuleMap rho = rho_map(M);
    // image generators of rho span a submodule; quotient and strip
    std::vector<std::pair<long, CycVector>> gens;
    for (auto& [i, d] : M->dims()) {
        auto field = M->structure()->field();
        for (long c = 0; c < d; ++c) {
            CycVector e(d, CyclotomicNumber::zero(field));
            e[c] = CyclotomicNumber::one(field);
            gens.emplace_back(i, rho.apply(i, e));
        }
    }
    Submodule image = submodule(rho.target(), gens);
    if (image.module->total_dim() != M->total_dim())
        throw std::logic_error("shift_plus: rho is not injective");
    QuotientModule coker = quotient(rho.target(), image);
    return strip_projectives(coker.module).reduced;
}

ModulePtr shift_minus(const ModulePtr& M) {
    ModulePtr result = dual(shift_plus(dual(M)));
    StrippedModule s = strip_projectives(result);
    if (!s.free_multiplicity.is_zero())
        throw std::logic_error("shift_minus: dual of a reduced module has a free summand");
    return s.reduced;
}

ModulePtr shift_stable(const ModulePtr& M, long times) {
    ModulePtr cur = strip_projectives(M).reduced;
    for (; times > 0; --times) cur = shift_plus(cur);
    for (; times < 0; ++times) cur = shift_minus(cur);
    return cur;
}

ModulePtr cone(const ModuleMap& f) {
    if (f.degree() != 0 || !f.is_intertwiner())
        throw std::invalid_argument("cone: degree-0 intertwiner required");
    const ModulePtr& M = f.source();
    const ModulePtr& N = f.target();
    auto field = M->structure()->field();
    ModuleMap rho = rho_map(M);
    ModulePtr T = rho.target();
    ModulePtr D = direct_sum(T, N);
    std::vector<std::pair<long, CycVector>> gens;
    for (auto& [i, d] : M->dims()) {
        for (long c = 0; c < d; ++c) {
            CycVector e(d, CyclotomicNumber::zero(field));
            e[c] = CyclotomicNumber::one(field);
            CycVector top = rho.apply(i, e);
            CycVector bot = f.apply(i, e);
            CycVector both(D->dim(i), CyclotomicNumber::zero(field));
            for (size_t r = 0; r < top.size(); ++r) both[r] = top[r];
            for (size_t r = 0; r < bot.size(); ++r) both[T->dim(i) + r] = -bot[r];
            gens.emplace_back(i, both);
        }
    }
    Submodule graph = submodule(D, gens);
    QuotientModule out = quotient(D, graph);
    if (out.module->graded_dim() != T->graded_dim() + N->graded_dim() - M->graded_dim())
        throw std::logic_error("cone: graded dimension identity failed");
    return out.module;
}

}  // namespace oncat

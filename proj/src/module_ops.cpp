#include "oncat/module_ops.hpp"

#include <mutex>

#include "oncat/bosonization.hpp"

namespace oncat {

const TensorLayout::Slot* TensorLayout::slot_at(long d, long i) const {
    auto it = slots.find(d);
    if (it == slots.end()) return nullptr;
    for (auto& s : it->second)
        if (s.i == i) return &s;
    return nullptr;
}

long TensorLayout::dim(long d) const {
    auto it = slots.find(d);
    if (it == slots.end()) return 0;
    long total = 0;
    for (auto& s : it->second) total += s.mdim * s.ndim;
    return total;
}

TensorLayout tensor_layout(const GradedModule& M, const GradedModule& N) {
    TensorLayout layout;
    for (auto& [i, dm] : M.dims())
        for (auto& [j, dn] : N.dims()) {
            auto& list = layout.slots[i + j];
            list.push_back(TensorLayout::Slot{i, j, 0, dm, dn});
        }
    for (auto& [d, list] : layout.slots) {
        long off = 0;
        for (auto& s : list) {
            s.offset = off;
            off += s.mdim * s.ndim;
        }
    }
    return layout;
}

ModulePtr tensor(const ModulePtr& M, const ModulePtr& N, TensorVariant variant) {
    check_same_structure(*M, *N);
    const auto& s = M->structure();
    auto field = s->field();
    TensorLayout layout = tensor_layout(*M, *N);

    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    for (auto& [d, list] : layout.slots) raw.dims[d] = layout.dim(d);

    const long sign = variant == TensorVariant::Q ? 1 : -1;
    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        for (auto& [d, list] : layout.slots) {
            long out_dim = layout.dim(d + nk);
            if (out_dim == 0) continue;
            Matrix block(field, out_dim, layout.dim(d));
            for (auto& slot : list) {
                // d_k x (x) y lands in slot (i + nk, j)
                if (const TensorLayout::Slot* to = layout.slot_at(d + nk, slot.i + nk)) {
                    if (M->has_action(k, slot.i)) {
                        const Matrix& a = M->action(k, slot.i);
                        for (long r = 0; r < a.rows(); ++r)
                            for (long c = 0; c < a.cols(); ++c) {
                                if (a.at(r, c).is_zero()) continue;
                                for (long y = 0; y < slot.ndim; ++y)
                                    block.at(to->offset + r * to->ndim + y,
                                             slot.offset + c * slot.ndim + y) += a.at(r, c);
                            }
                    }
                }
                // q^{sign nk i} x (x) d_k y lands in slot (i, j + nk)
                if (const TensorLayout::Slot* to = layout.slot_at(d + nk, slot.i)) {
                    if (N->has_action(k, slot.j)) {
                        const Matrix& a = N->action(k, slot.j);
                        const CyclotomicNumber& tw = s->q_power(sign * nk * slot.i);
                        for (long r = 0; r < a.rows(); ++r)
                            for (long c = 0; c < a.cols(); ++c) {
                                if (a.at(r, c).is_zero()) continue;
                                CyclotomicNumber v = a.at(r, c) * tw;
                                for (long x = 0; x < slot.mdim; ++x)
                                    block.at(to->offset + x * to->ndim + r,
                                             slot.offset + x * slot.ndim + c) += v;
                            }
                    }
                }
            }
            raw.actions[k].emplace(d, std::move(block));
        }
    }
    return GradedModule::validate(std::move(raw));
}

ModuleMap tensor_map(const ModuleMap& f, const ModuleMap& g, TensorVariant variant) {
    ModulePtr src = tensor(f.source(), g.source(), variant);
    ModulePtr dst = tensor(f.target(), g.target(), variant);
    TensorLayout src_layout = tensor_layout(*f.source(), *g.source());
    TensorLayout dst_layout = tensor_layout(*f.target(), *g.target());
    ModuleMap out(src, dst, f.degree() + g.degree());
    auto field = src->structure()->field();
    for (auto& [d, list] : src_layout.slots) {
        long out_dim = dst_layout.dim(d + out.degree());
        if (out_dim == 0 || src_layout.dim(d) == 0) continue;
        Matrix block(field, out_dim, src_layout.dim(d));
        bool nonzero = false;
        for (auto& slot : list) {
            const TensorLayout::Slot* to =
                dst_layout.slot_at(d + out.degree(), slot.i + f.degree());
            if (!to) continue;
            const Matrix* fb = f.block(slot.i);
            const Matrix* gb = g.block(slot.j);
            if (!fb || !gb) continue;
            for (long r1 = 0; r1 < fb->rows(); ++r1)
                for (long c1 = 0; c1 < fb->cols(); ++c1) {
                    if (fb->at(r1, c1).is_zero()) continue;
                    for (long r2 = 0; r2 < gb->rows(); ++r2)
                        for (long c2 = 0; c2 < gb->cols(); ++c2) {
                            if (gb->at(r2, c2).is_zero()) continue;
                            block.at(to->offset + r1 * to->ndim + r2,
                                     slot.offset + c1 * slot.ndim + c2) +=
                                fb->at(r1, c1) * gb->at(r2, c2);
                            nonzero = true;
                        }
                }
        }
        if (nonzero) out.set_block(d, std::move(block));
    }
    return out;
}

namespace {

std::mutex algebra_mutex;
std::map<long, std::shared_ptr<const BosonizedAlgebraQ>>& algebra_registry() {
    static std::map<long, std::shared_ptr<const BosonizedAlgebraQ>> reg;
    return reg;
}

}  // namespace

const BosonizedAlgebraQ& bosonization_for(const StructurePtr& s) {
    {
        std::lock_guard<std::mutex> lock(algebra_mutex);
        auto it = algebra_registry().find(s->n());
        if (it != algebra_registry().end()) return *it->second;
    }
    auto alg = std::make_shared<BosonizedAlgebraQ>(s->pbw(), CycScalarField::make(s->N()));
    std::lock_guard<std::mutex> lock(algebra_mutex);
    return *algebra_registry().emplace(s->n(), std::move(alg)).first->second;
}

ModulePtr dual(const ModulePtr& M) {
    const auto& s = M->structure();
    auto field = s->field();
    const auto& A = bosonization_for(s);

    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    for (auto& [i, d] : M->dims()) raw.dims[-i] = d;

    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        // S^{-1}(d_k) = c d_k K^w read from the antipode-inverse table; the
        // dual action is (d_k . f)(x) = c q^{w deg(x)} f(d_k x).
        std::vector<int> gen(s->t(), 0);
        gen[k] = 1;
        auto img = A.antipode_inv_monomial(A.flat(s->pbw()->pack(gen), 0));
        if (A.a_of(img.key) != s->pbw()->pack(gen))
            throw std::logic_error("dual: unexpected antipode-inverse shape");
        long w = A.k_of(img.key);  // K-exponent mod N
        const CyclotomicNumber& c = img.coeff;

        for (auto& [i, d] : raw.dims) {
            // block (M*)^i -> (M*)^{i+nk}: transpose of d_k from M^{-i-nk}
            long src_deg = -i - nk;
            if (M->dim(src_deg) == 0 || M->dim(-i) == 0) continue;
            if (!M->has_action(k, src_deg)) continue;
            Matrix b = M->action(k, src_deg).transpose() * (c * s->q_power(w * src_deg));
            raw.actions[k].emplace(i, std::move(b));
        }
    }
    return GradedModule::validate(std::move(raw));
}

ModulePtr internal_hom(const ModulePtr& M, const ModulePtr& N) { return tensor(dual(M), N); }

ModulePtr internal_hom_blocks(const ModulePtr& M, const ModulePtr& N) {
    check_same_structure(*M, *N);
    const auto& s = M->structure();
    auto field = s->field();

    // degree-d component: sum_i Hom(M^i, N^{i+d}); use HomShape for layout
    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    std::map<long, HomShape> shapes;
    long lo = 0, hi = 0;
    if (!M->is_zero_module() && !N->is_zero_module()) {
        lo = N->degrees().front() - M->degrees().back();
        hi = N->degrees().back() - M->degrees().front();
    }
    for (long d = lo; d <= hi; ++d) {
        HomShape shape(*M, *N, d);
        if (shape.total == 0) continue;
        raw.dims[d] = shape.total;
        shapes.emplace(d, std::move(shape));
    }

    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        for (auto& [d, shape] : shapes) {
            auto to = shapes.find(d + nk);
            if (to == shapes.end()) continue;
            Matrix block(field, to->second.total, shape.total);
            // (d_k f)(v) = xi_k^{-i} (d_k f(v) - f(d_k v)) for v of degree i.
            for (auto& piece : shape.pieces) {
                // f is a block M^{piece.i} -> N^{piece.i + d}; index (r, c).
                // Term d_k f(v): lands in the target piece at source degree piece.i.
                if (const HomShape::Piece* tp = to->second.piece_at(piece.i)) {
                    if (N->has_action(k, piece.i + d)) {
                        const Matrix& a = N->action(k, piece.i + d);
                        const CyclotomicNumber& tw = s->q_power(-nk * piece.i);
                        for (long r = 0; r < piece.rows; ++r)
                            for (long c = 0; c < piece.cols; ++c)
                                for (long rr = 0; rr < a.rows(); ++rr) {
                                    if (a.at(rr, r).is_zero()) continue;
                                    block.at(tp->offset + rr * tp->cols + c,
                                             piece.offset + r * piece.cols + c) +=
                                        tw * a.at(rr, r);
                                }
                    }
                }
                // Term -f(d_k v): v in M^{i'} with i' = piece.i - nk; lands in
                // the target piece at source degree piece.i - nk.
                if (const HomShape::Piece* tp = to->second.piece_at(piece.i - nk)) {
                    if (M->has_action(k, piece.i - nk)) {
                        const Matrix& a = M->action(k, piece.i - nk);
                        const CyclotomicNumber& tw = s->q_power(-nk * (piece.i - nk));
                        for (long r = 0; r < piece.rows; ++r)
                            for (long c = 0; c < piece.cols; ++c)
                                for (long cc = 0; cc < a.cols(); ++cc) {
                                    if (a.at(c, cc).is_zero()) continue;
                                    block.at(tp->offset + r * tp->cols + cc,
                                             piece.offset + r * piece.cols + c) -=
                                        tw * a.at(c, cc);
                                }
                    }
                }
            }
            raw.actions[k].emplace(d, std::move(block));
        }
    }
    return GradedModule::validate(std::move(raw));
}

ModuleMap internal_hom_compatibility(const ModulePtr& M, const ModulePtr& N) {
    ModulePtr lhs = internal_hom(M, N);
    ModulePtr rhs = internal_hom_blocks(M, N);
    ModulePtr dm = dual(M);
    TensorLayout layout = tensor_layout(*dm, *N);
    auto field = M->structure()->field();
    ModuleMap theta(lhs, rhs, 0);
    for (auto& [d, list] : layout.slots) {
        HomShape shape(*M, *N, d);
        if (shape.total == 0) continue;
        Matrix block(field, shape.total, layout.dim(d));
        for (auto& slot : list) {
            // slot: (dual degree u, N degree j = d - u); phi in (M^{-u})*,
            // y in N^j; theta(phi_r (x) y_s) = E_{s,r} : M^{-u} -> N^{-u+d}.
            const HomShape::Piece* piece = shape.piece_at(-slot.i);
            if (!piece) throw std::logic_error("internal_hom_compatibility: missing piece");
            for (long r = 0; r < slot.mdim; ++r)
                for (long ss = 0; ss < slot.ndim; ++ss)
                    block.at(piece->offset + ss * piece->cols + r,
                             slot.offset + r * slot.ndim + ss) = CyclotomicNumber::one(field);
        }
        theta.set_block(d, std::move(block));
    }
    if (!theta.is_intertwiner())
        throw std::logic_error("internal_hom_compatibility: canonical map fails to intertwine");
    if (!theta.inverse())
        throw std::logic_error("internal_hom_compatibility: canonical map is not invertible");
    return theta;
}

std::vector<ModuleMap> hom_space(const ModulePtr& M, const ModulePtr& N, long degree) {
    check_same_structure(*M, *N);
    const auto& s = M->structure();
    auto field = s->field();
    HomShape shape(*M, *N, degree);
    if (shape.total == 0) return {};

    // unknowns: blocks f_i (row-major); equations: per k and source degree i,
    // dst.action(k, i+degree) f_i = f_{i+nk} src.action(k, i)
    long eqs = 0;
    std::vector<std::tuple<int, long, long>> eq_index;  // (k, i, offset)
    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        for (auto& [i, dsrc] : M->dims()) {
            long rows_out = N->dim(i + degree + nk);
            if (rows_out == 0) continue;
            eq_index.emplace_back(k, i, eqs);
            eqs += rows_out * dsrc;
        }
    }
    SparseMatrix sys(eqs, shape.total);
    for (auto& [k, i, off] : eq_index) {
        const long nk = s->n_k(k);
        long rows_out = N->dim(i + degree + nk);
        long dsrc = M->dim(i);
        // + D[a][r] f_i[r][b]
        if (const HomShape::Piece* p = shape.piece_at(i)) {
            if (N->has_action(k, i + degree)) {
                const Matrix& D = N->action(k, i + degree);
                for (long a = 0; a < rows_out; ++a)
                    for (long r = 0; r < D.cols(); ++r) {
                        if (D.at(a, r).is_zero()) continue;
                        for (long b = 0; b < dsrc; ++b)
                            sys.add(off + a * dsrc + b, p->offset + r * p->cols + b, D.at(a, r));
                    }
            }
        }
        // - f_{i+nk}[a][s] S[s][b]
        if (const HomShape::Piece* p = shape.piece_at(i + nk)) {
            if (M->has_action(k, i)) {
                const Matrix& S = M->action(k, i);
                for (long a = 0; a < rows_out; ++a)
                    for (long ss = 0; ss < S.rows(); ++ss)
                        for (long b = 0; b < dsrc; ++b) {
                            if (S.at(ss, b).is_zero()) continue;
                            sys.add(off + a * dsrc + b, p->offset + a * p->cols + ss,
                                    -S.at(ss, b));
                        }
            }
        }
    }
    std::vector<ModuleMap> basis;
    for (auto& v : kernel_basis(sys, field))
        basis.push_back(ModuleMap::from_coords(M, N, degree, v));
    return basis;
}

long invariant_dim(const ModulePtr& X, long degree) {
    const auto& s = X->structure();
    long d = X->dim(degree);
    if (d == 0) return 0;
    long rows = 0;
    for (int k = 0; k < s->t(); ++k) rows += X->dim(degree + s->n_k(k));
    SparseMatrix sys(rows, d);
    long off = 0;
    for (int k = 0; k < s->t(); ++k) {
        long out = X->dim(degree + s->n_k(k));
        if (out == 0) continue;
        if (X->has_action(k, degree)) {
            const Matrix& a = X->action(k, degree);
            for (long r = 0; r < a.rows(); ++r)
                for (long c = 0; c < a.cols(); ++c)
                    if (!a.at(r, c).is_zero()) sys.add(off + r, c, a.at(r, c));
        }
        off += out;
    }
    return static_cast<long>(kernel_basis(sys, s->field()).size());
}

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::optional<ModuleMap> try_invertible(const std::vector<ModuleMap>& basis,
                                        const std::vector<long>& coeffs) {
    const auto& field = basis.front().source()->structure()->field();
    ModuleMap cand(basis.front().source(), basis.front().target(), 0);
    for (size_t i = 0; i < basis.size(); ++i)
        if (coeffs[i] != 0)
            cand = cand + basis[i].scaled(CyclotomicNumber(field, mpq_class(coeffs[i])));
    if (cand.inverse()) return cand;
    return std::nullopt;
}

}  // namespace

IsoSearchResult is_isomorphic(const ModulePtr& M, const ModulePtr& N, std::uint64_t seed) {
    IsoSearchResult res;
    check_same_structure(*M, *N);
    if (M->dims() != N->dims()) {
        res.certified_negative = true;  // graded dimensions differ
        return res;
    }
    if (M->is_zero_module()) {
        res.iso = ModuleMap(M, N, 0);
        return res;
    }
    auto basis = hom_space(M, N, 0);
    if (basis.empty()) {
        res.certified_negative = true;
        return res;
    }
    const size_t h = basis.size();

    // (a) basis elements
    for (size_t i = 0; i < h; ++i) {
        std::vector<long> c(h, 0);
        c[i] = 1;
        if (auto iso = try_invertible(basis, c)) {
            res.iso = std::move(*iso);
            return res;
        }
    }
    // (b) seeded random combinations with growing coefficient sets
    std::uint64_t state = seed;
    for (int window : {1, 2, 3, 5, 9}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<long> c(h);
            for (auto& x : c) x = static_cast<long>(splitmix(state) % (2 * window + 1)) - window;
            if (auto iso = try_invertible(basis, c)) {
                res.iso = std::move(*iso);
                return res;
            }
        }
    }
    // (c) deterministic sweep for small hom spaces: the product of block
    // determinants is a polynomial of total degree <= D in the coefficients;
    // if it vanishes on {0,...,D}^h it vanishes identically and no
    // isomorphism exists.
    if (h <= 4) {
        long D = M->total_dim();
        std::vector<long> c(h, 0);
        while (true) {
            if (auto iso = try_invertible(basis, c)) {
                res.iso = std::move(*iso);
                return res;
            }
            size_t pos = 0;
            while (pos < h && c[pos] == D) c[pos++] = 0;
            if (pos == h) break;
            ++c[pos];
        }
        res.certified_negative = true;
        return res;
    }
    return res;  // exhausted, not certified
}

ModuleMap braiding_iso(const ModulePtr& V, const ModulePtr& W) {
    check_same_structure(*V, *W);
    const auto& s = V->structure();
    auto field = s->field();
    ModulePtr src = tensor(V, W, TensorVariant::Q);
    ModulePtr dst = tensor(W, V, TensorVariant::QInverse);
    TensorLayout src_layout = tensor_layout(*V, *W);
    TensorLayout dst_layout = tensor_layout(*W, *V);
    ModuleMap psi(src, dst, 0);
    for (auto& [d, list] : src_layout.slots) {
        if (src_layout.dim(d) == 0 || dst_layout.dim(d) == 0) continue;
        Matrix block(field, dst_layout.dim(d), src_layout.dim(d));
        for (auto& slot : list) {
            const TensorLayout::Slot* to = dst_layout.slot_at(d, slot.j);
            if (!to) throw std::logic_error("braiding_iso: missing mirror slot");
            const CyclotomicNumber& tw = s->q_power(-slot.i * slot.j);
            for (long r = 0; r < slot.mdim; ++r)
                for (long c = 0; c < slot.ndim; ++c)
                    block.at(to->offset + c * to->ndim + r, slot.offset + r * slot.ndim + c) = tw;
        }
        psi.set_block(d, std::move(block));
    }
    if (!psi.is_intertwiner())
        throw std::logic_error("braiding_iso: the swap map fails to intertwine");
    return psi;
}

ModuleMap associator(const ModulePtr& A, const ModulePtr& B, const ModulePtr& C,
                     TensorVariant variant) {
    ModulePtr AB = tensor(A, B, variant);
    ModulePtr BC = tensor(B, C, variant);
    ModulePtr src = tensor(AB, C, variant);
    ModulePtr dst = tensor(A, BC, variant);
    auto field = A->structure()->field();
    TensorLayout lay_ab = tensor_layout(*A, *B);
    TensorLayout lay_bc = tensor_layout(*B, *C);
    TensorLayout lay_src = tensor_layout(*AB, *C);
    TensorLayout lay_dst = tensor_layout(*A, *BC);
    ModuleMap f(src, dst, 0);
    for (auto& [d, list] : lay_src.slots) {
        if (lay_src.dim(d) == 0 || lay_dst.dim(d) == 0) continue;
        Matrix block(field, lay_dst.dim(d), lay_src.dim(d));
        for (auto& slot : list) {
            // slot: (AB)^{slot.i} (x) C^{slot.j}; expand AB slots
            auto ab_it = lay_ab.slots.find(slot.i);
            if (ab_it == lay_ab.slots.end()) continue;
            for (auto& ab : ab_it->second) {
                // a-index in A^{ab.i}, b-index in B^{ab.j}, c-index in C^{slot.j}
                const TensorLayout::Slot* dslot = lay_dst.slot_at(d, ab.i);
                if (!dslot) throw std::logic_error("associator: missing target slot");
                const TensorLayout::Slot* bc = lay_bc.slot_at(ab.j + slot.j, ab.j);
                if (!bc) throw std::logic_error("associator: missing BC slot");
                for (long x = 0; x < ab.mdim; ++x)
                    for (long y = 0; y < ab.ndim; ++y)
                        for (long z = 0; z < slot.ndim; ++z) {
                            long src_col =
                                slot.offset + (ab.offset + x * ab.ndim + y) * slot.ndim + z;
                            long dst_row =
                                dslot->offset + x * dslot->ndim + (bc->offset + y * bc->ndim + z);
                            block.at(dst_row, src_col) = CyclotomicNumber::one(field);
                        }
            }
        }
        f.set_block(d, std::move(block));
    }
    if (!f.is_intertwiner()) throw std::logic_error("associator: regrouping fails to intertwine");
    return f;
}

}  // namespace oncat

#include "oncat/graded_module.hpp"

#include "oncat/module_map.hpp"

namespace oncat {

void check_same_structure(const GradedModule& a, const GradedModule& b) {
    if (!a.structure()->same_as(*b.structure()))
        throw ValidationError(ValidationError::Kind::StructureMismatch,
                              "modules over different structures");
}

ModulePtr GradedModule::validate(RawModule raw) {
    if (!raw.structure) throw std::invalid_argument("validate: missing structure");
    const auto& s = *raw.structure;
    const long t = s.t();

    // drop zero-dimensional entries; reject negatives
    for (auto it = raw.dims.begin(); it != raw.dims.end();) {
        if (it->second < 0)
            throw ValidationError(ValidationError::Kind::ShapeMismatch,
                                  "negative dimension at degree " + std::to_string(it->first), -1,
                                  -1, it->first);
        if (it->second == 0)
            it = raw.dims.erase(it);
        else
            ++it;
    }
    if (static_cast<long>(raw.actions.size()) != t)
        throw ValidationError(ValidationError::Kind::ShapeMismatch,
                              "expected one action family per prime factor");

    auto dim_of = [&raw](long i) {
        auto it = raw.dims.find(i);
        return it == raw.dims.end() ? 0L : it->second;
    };

    // shape and presence
    for (int k = 0; k < t; ++k) {
        const long nk = s.n_k(k);
        for (auto& [i, mat] : raw.actions[k]) {
            if (dim_of(i) == 0 || dim_of(i + nk) == 0) {
                if (mat.rows() == dim_of(i + nk) && mat.cols() == dim_of(i)) continue;
                throw ValidationError(ValidationError::Kind::ShapeMismatch,
                                      "action d" + std::to_string(k + 1) + " at degree " +
                                          std::to_string(i) + " maps between zero components",
                                      k, -1, i);
            }
            if (mat.rows() != dim_of(i + nk) || mat.cols() != dim_of(i))
                throw ValidationError(ValidationError::Kind::ShapeMismatch,
                                      "action d" + std::to_string(k + 1) + " at degree " +
                                          std::to_string(i) + " has shape " +
                                          std::to_string(mat.rows()) + "x" +
                                          std::to_string(mat.cols()) + ", expected " +
                                          std::to_string(dim_of(i + nk)) + "x" +
                                          std::to_string(dim_of(i)),
                                      k, -1, i);
        }
        for (auto& [i, d] : raw.dims) {
            if (dim_of(i + nk) > 0 && !raw.actions[k].count(i))
                throw ValidationError(ValidationError::Kind::ShapeMismatch,
                                      "missing action block d" + std::to_string(k + 1) +
                                          " from degree " + std::to_string(i),
                                      k, -1, i);
        }
    }

    // normalize: strip blocks into zero components
    for (int k = 0; k < t; ++k) {
        const long nk = s.n_k(k);
        for (auto it = raw.actions[k].begin(); it != raw.actions[k].end();) {
            if (dim_of(it->first) == 0 || dim_of(it->first + nk) == 0)
                it = raw.actions[k].erase(it);
            else
                ++it;
        }
    }

    auto mod = std::shared_ptr<GradedModule>(new GradedModule());
    mod->structure_ = raw.structure;
    mod->dims_ = std::move(raw.dims);
    mod->actions_ = std::move(raw.actions);

    // nilpotency: composing p_k consecutive blocks vanishes
    for (int k = 0; k < t; ++k) {
        const long nk = s.n_k(k);
        const long pk = s.p_k(k);
        for (auto& [i, d] : mod->dims_) {
            if (mod->dim(i + pk * nk) == 0) continue;
            Matrix comp = Matrix::identity(s.field(), mod->dim(i));
            bool broke = false;
            for (long step = 0; step < pk; ++step) {
                long at = i + step * nk;
                if (!mod->has_action(k, at)) {
                    broke = true;
                    break;
                }
                comp = mod->action(k, at) * comp;
            }
            if (!broke && !comp.is_zero())
                throw ValidationError(ValidationError::Kind::NilpotencyViolation,
                                      "d" + std::to_string(k + 1) + "^" + std::to_string(pk) +
                                          " != 0 from degree " + std::to_string(i),
                                      k, -1, i);
        }
    }

    // commutation: d_l d_k = d_k d_l on every degree
    for (int k = 0; k < t; ++k)
        for (int l = k + 1; l < t; ++l) {
            const long nk = s.n_k(k), nl = s.n_k(l);
            for (auto& [i, d] : mod->dims_) {
                if (mod->dim(i + nk + nl) == 0) continue;
                // d_l after d_k
                Matrix a(s.field(), mod->dim(i + nk + nl), mod->dim(i));
                if (mod->has_action(k, i) && mod->has_action(l, i + nk))
                    a = mod->action(l, i + nk) * mod->action(k, i);
                Matrix b(s.field(), mod->dim(i + nk + nl), mod->dim(i));
                if (mod->has_action(l, i) && mod->has_action(k, i + nl))
                    b = mod->action(k, i + nl) * mod->action(l, i);
                if (a != b)
                    throw ValidationError(ValidationError::Kind::CommutationViolation,
                                          "[d" + std::to_string(k + 1) + ", d" +
                                              std::to_string(l + 1) + "] != 0 from degree " +
                                              std::to_string(i),
                                          k, l, i);
            }
        }
    return mod;
}

std::vector<long> GradedModule::degrees() const {
    std::vector<long> out;
    for (auto& [i, d] : dims_) out.push_back(i);
    return out;
}

long GradedModule::total_dim() const {
    long total = 0;
    for (auto& [i, d] : dims_) total += d;
    return total;
}

LaurentPolynomial GradedModule::graded_dim() const {
    LaurentPolynomial p;
    for (auto& [i, d] : dims_) p += LaurentPolynomial::term(d, i);
    return p;
}

CycVector GradedModule::apply(int k, long i, const CycVector& v) const {
    const long nk = structure_->n_k(k);
    long target = dim(i + nk);
    if (target == 0) return {};
    if (!has_action(k, i)) return CycVector(target, CyclotomicNumber::zero(structure_->field()));
    return action(k, i).apply(v);
}

Matrix GradedModule::monomial_operator(long a_idx, long i) const {
    const auto& pbw = *structure_->pbw();
    const auto& expo = pbw.exponents[a_idx];
    long from = i;
    Matrix comp = Matrix::identity(structure_->field(), dim(i));
    for (int k = 0; k < structure_->t(); ++k) {
        for (int rep = 0; rep < expo[k]; ++rep) {
            long target_dim = dim(from + structure_->n_k(k));
            Matrix next(structure_->field(), target_dim, dim(from));
            if (has_action(k, from)) next = action(k, from);
            comp = next * comp;
            from += structure_->n_k(k);
            if (target_dim == 0) return Matrix(structure_->field(), 0, dim(i));
        }
    }
    return comp;
}

// --- standard modules ------------------------------------------------------

ModulePtr trivial_module(const StructurePtr& s, long shift) {
    RawModule raw;
    raw.structure = s;
    raw.dims[-shift] = 1;
    raw.actions.assign(s->t(), {});
    return GradedModule::validate(std::move(raw));
}

ModulePtr free_module(const StructurePtr& s, long shift) {
    const auto& pbw = *s->pbw();
    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    const long m = pbw.count();
    // basis d^a at degree deg(a) - shift, ordered by packed index within a degree
    std::map<long, std::vector<long>> slots;  // degree -> list of packed indices
    for (long a = 0; a < m; ++a) slots[pbw.degree[a] - shift].push_back(a);
    std::map<std::pair<long, long>, long> pos;  // (degree, packed) -> position
    for (auto& [deg, list] : slots) {
        raw.dims[deg] = static_cast<long>(list.size());
        for (size_t p = 0; p < list.size(); ++p) pos[{deg, list[p]}] = static_cast<long>(p);
    }
    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        for (auto& [deg, list] : slots) {
            auto to = slots.find(deg + nk);
            if (to == slots.end()) continue;
            Matrix mat(s->field(), static_cast<long>(to->second.size()),
                       static_cast<long>(list.size()));
            for (size_t c = 0; c < list.size(); ++c) {
                std::vector<int> a = pbw.exponents[list[c]];
                if (a[k] == s->p_k(k) - 1) continue;  // d_k kills the top exponent
                a[k] += 1;
                long target = pbw.pack(a);
                mat.at(pos[{deg + nk, target}], static_cast<long>(c)) =
                    CyclotomicNumber::one(s->field());
            }
            raw.actions[k].emplace(deg, std::move(mat));
        }
    }
    return GradedModule::validate(std::move(raw));
}

ModulePtr string_module(const StructurePtr& s, int k, long shift) {
    if (k < 0 || k >= s->t()) throw std::invalid_argument("string_module: prime index out of range");
    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    const long nk = s->n_k(k);
    for (long j = 0; j < s->p_k(k); ++j) raw.dims[-shift + j * nk] = 1;
    for (long j = 0; j + 1 < s->p_k(k); ++j) {
        Matrix one(s->field(), 1, 1);
        one.at(0, 0) = CyclotomicNumber::one(s->field());
        raw.actions[k].emplace(-shift + j * nk, std::move(one));
    }
    return GradedModule::validate(std::move(raw));
}

namespace {

// The paper's hand-drawn two-prime examples live over n = 6u (p_1 = 2,
// p_2 = 3, n_1 = 3u, n_2 = 2u). Vertices are given as (degree, tag) with
// identity arrows; build a module from an arrow list.
ModulePtr module_from_arrows(const StructurePtr& s, const std::vector<long>& vertex_degrees,
                             const std::vector<std::vector<std::pair<int, int>>>& arrows) {
    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    std::map<long, std::vector<int>> slots;
    for (size_t v = 0; v < vertex_degrees.size(); ++v)
        slots[vertex_degrees[v]].push_back(static_cast<int>(v));
    std::map<int, std::pair<long, long>> pos;  // vertex -> (degree, index)
    for (auto& [deg, list] : slots) {
        raw.dims[deg] = static_cast<long>(list.size());
        for (size_t p = 0; p < list.size(); ++p) pos[list[p]] = {deg, static_cast<long>(p)};
    }
    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        std::map<long, Matrix> blocks;
        for (auto& [deg, list] : slots) {
            auto to = slots.find(deg + nk);
            if (to == slots.end()) continue;
            blocks.emplace(deg, Matrix(s->field(), static_cast<long>(to->second.size()),
                                       static_cast<long>(list.size())));
        }
        for (auto& [from, to] : arrows[k]) {
            auto [fd, fi] = pos[from];
            auto [td, ti] = pos[to];
            if (td != fd + nk) throw std::logic_error("example module: arrow degree mismatch");
            blocks.at(fd).at(ti, fi) = CyclotomicNumber::one(s->field());
        }
        for (auto& [deg, m] : blocks) raw.actions[k].emplace(deg, m);
    }
    return GradedModule::validate(std::move(raw));
}

long example_unit(const StructurePtr& s) {
    if (s->n() % 6 != 0)
        throw std::invalid_argument("two-prime example modules require 6 | n, n = " +
                                    std::to_string(s->n()));
    return s->n() / 6;
}

}  // namespace

ModulePtr example_module_V(const StructurePtr& s) {
    const long u = example_unit(s);
    // vertices 0,1,2 = top row at degrees 0, 2u, 4u; 3,4,5 = bottom row at
    // degrees u, 3u, 5u; d_2 along rows, d_1 drops 0 -> 4 and 1 -> 5.
    std::vector<long> deg{0, 2 * u, 4 * u, u, 3 * u, 5 * u};
    std::vector<std::vector<std::pair<int, int>>> arrows(s->t());
    arrows[1] = {{0, 1}, {1, 2}, {3, 4}, {4, 5}};
    arrows[0] = {{0, 4}, {1, 5}};
    return module_from_arrows(s, deg, arrows);
}

ModulePtr example_module_Vprime(const StructurePtr& s) {
    const long u = example_unit(s);
    std::vector<long> deg{0, 2 * u, 4 * u, 3 * u, 5 * u, 7 * u};
    std::vector<std::vector<std::pair<int, int>>> arrows(s->t());
    arrows[1] = {{0, 1}, {1, 2}, {3, 4}, {4, 5}};
    arrows[0] = {{0, 3}, {1, 4}, {2, 5}};
    return module_from_arrows(s, deg, arrows);
}

ModulePtr example_module_Vdoubleprime(const StructurePtr& s) {
    const long u = example_unit(s);
    std::vector<long> deg{0, 2 * u, 4 * u, -u, u, 3 * u};
    std::vector<std::vector<std::pair<int, int>>> arrows(s->t());
    arrows[1] = {{0, 1}, {1, 2}, {3, 4}, {4, 5}};
    arrows[0] = {{0, 5}};
    return module_from_arrows(s, deg, arrows);
}

ModulePtr example_module_three_primes(const StructurePtr& s) {
    if (s->n() % 30 != 0)
        throw std::invalid_argument("three-prime example requires 30 | n, n = " +
                                    std::to_string(s->n()));
    const long n1 = s->n() / 2, n2 = s->n() / 3, n3 = s->n() / 5;
    // top row: degrees -n1, -n1+n2, -n1+2n2 (vertices 0,1,2), d_2 arrows;
    // bottom row: degrees -4n3 ... 0 (vertices 3..7), d_3 arrows;
    // one d_1 arrow from vertex 0 down to the degree-0 vertex.
    std::vector<long> deg{-n1, -n1 + n2, -n1 + 2 * n2, -4 * n3, -3 * n3, -2 * n3, -n3, 0};
    std::vector<std::vector<std::pair<int, int>>> arrows(s->t());
    arrows[1] = {{0, 1}, {1, 2}};
    arrows[2] = {{3, 4}, {4, 5}, {5, 6}, {6, 7}};
    arrows[0] = {{0, 7}};
    return module_from_arrows(s, deg, arrows);
}

// --- elementary constructions ----------------------------------------------

ModulePtr shift_module(const ModulePtr& M, long b) {
    RawModule raw;
    raw.structure = M->structure();
    raw.actions.assign(M->structure()->t(), {});
    for (auto& [i, d] : M->dims()) raw.dims[i - b] = d;
    for (int k = 0; k < M->structure()->t(); ++k)
        for (auto& [i, d] : M->dims())
            if (M->has_action(k, i)) raw.actions[k].emplace(i - b, M->action(k, i));
    return GradedModule::validate(std::move(raw));
}

ModulePtr direct_sum(const ModulePtr& M, const ModulePtr& N) {
    check_same_structure(*M, *N);
    const auto& s = M->structure();
    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    for (auto& [i, d] : M->dims()) raw.dims[i] += d;
    for (auto& [i, d] : N->dims()) raw.dims[i] += d;
    auto dim_of = [&raw](long i) {
        auto it = raw.dims.find(i);
        return it == raw.dims.end() ? 0L : it->second;
    };
    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        for (auto& [i, d] : raw.dims) {
            if (dim_of(i + nk) == 0) continue;
            Matrix block(s->field(), dim_of(i + nk), d);
            // M occupies the leading coordinates at every degree.
            if (M->has_action(k, i)) {
                const Matrix& a = M->action(k, i);
                for (long r = 0; r < a.rows(); ++r)
                    for (long c = 0; c < a.cols(); ++c) block.at(r, c) = a.at(r, c);
            }
            if (N->has_action(k, i)) {
                const Matrix& a = N->action(k, i);
                long roff = M->dim(i + nk), coff = M->dim(i);
                for (long r = 0; r < a.rows(); ++r)
                    for (long c = 0; c < a.cols(); ++c) block.at(roff + r, coff + c) = a.at(r, c);
            }
            raw.actions[k].emplace(i, std::move(block));
        }
    }
    return GradedModule::validate(std::move(raw));
}

Submodule submodule(const ModulePtr& M, const std::vector<std::pair<long, CycVector>>& generators) {
    const auto& s = M->structure();
    auto field = s->field();
    std::map<long, RowSpace> spans;
    auto span_at = [&](long i) -> RowSpace& {
        auto it = spans.find(i);
        if (it == spans.end()) it = spans.emplace(i, RowSpace(field, M->dim(i))).first;
        return it->second;
    };
    std::vector<std::pair<long, CycVector>> work;
    for (auto& [i, v] : generators) {
        if (static_cast<long>(v.size()) != M->dim(i))
            throw ValidationError(ValidationError::Kind::NonHomogeneous,
                                  "generator length mismatch at degree " + std::to_string(i), -1,
                                  -1, i);
        if (span_at(i).add(v)) work.emplace_back(i, v);
    }
    while (!work.empty()) {
        auto [i, v] = work.back();
        work.pop_back();
        for (int k = 0; k < s->t(); ++k) {
            CycVector w = M->apply(k, i, v);
            if (w.empty()) continue;
            bool nonzero = false;
            for (auto& x : w)
                if (!x.is_zero()) nonzero = true;
            if (!nonzero) continue;
            if (span_at(i + s->n_k(k)).add(w)) work.emplace_back(i + s->n_k(k), w);
        }
    }

    // per-degree basis = echelon rows (deterministic)
    std::map<long, Matrix> basis;  // columns are basis vectors in M coordinates
    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    for (auto& [i, sp] : spans) {
        if (sp.dim() == 0) continue;
        Matrix b(field, M->dim(i), sp.dim());
        long c = 0;
        for (auto& [piv, row] : sp.rows()) {
            for (auto& [col, val] : row) b.at(col, c) = val;
            ++c;
        }
        basis.emplace(i, std::move(b));
        raw.dims[i] = sp.dim();
    }
    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        for (auto& [i, b] : basis) {
            auto target = basis.find(i + nk);
            if (target == basis.end()) continue;
            // express d_k(basis columns) in the target basis: solve T x = d_k b
            Matrix mat(field, target->second.cols(), b.cols());
            SparseMatrix sys(M->dim(i + nk), target->second.cols());
            for (long r = 0; r < M->dim(i + nk); ++r)
                for (long cc = 0; cc < target->second.cols(); ++cc)
                    sys.add(r, cc, target->second.at(r, cc));
            for (long c = 0; c < b.cols(); ++c) {
                CycVector img = M->apply(k, i, b.col(c));
                auto sol = solve_linear(sys, img, field);
                if (!sol)
                    throw std::logic_error("submodule: span not closed under the action");
                for (long r = 0; r < mat.rows(); ++r) mat.at(r, c) = (*sol)[r];
            }
            raw.actions[k].emplace(i, std::move(mat));
        }
    }
    Submodule result;
    result.module = GradedModule::validate(std::move(raw));
    auto inc = std::make_shared<ModuleMap>(result.module, M, 0);
    for (auto& [i, b] : basis) inc->set_block(i, b);
    if (!inc->is_intertwiner()) throw std::logic_error("submodule: inclusion fails to intertwine");
    result.inclusion = std::move(inc);
    return result;
}

QuotientModule quotient(const ModulePtr& M, const Submodule& S) {
    const auto& s = M->structure();
    auto field = s->field();
    check_same_structure(*M, *S.module);

    // rebuild per-degree spans of the submodule from the inclusion blocks
    std::map<long, RowSpace> spans;
    std::map<long, std::vector<long>> free_coords;
    for (auto& [i, d] : M->dims()) {
        RowSpace sp(field, d);
        if (const Matrix* b = S.inclusion->block(i))
            for (long c = 0; c < b->cols(); ++c) sp.add(b->col(c));
        std::vector<long> free;
        auto piv = sp.pivots();
        size_t pi = 0;
        for (long r = 0; r < d; ++r) {
            if (pi < piv.size() && piv[pi] == r) {
                ++pi;
                continue;
            }
            free.push_back(r);
        }
        free_coords.emplace(i, std::move(free));
        spans.emplace(i, std::move(sp));
    }

    RawModule raw;
    raw.structure = s;
    raw.actions.assign(s->t(), {});
    for (auto& [i, free] : free_coords)
        if (!free.empty()) raw.dims[i] = static_cast<long>(free.size());

    // projection of an ambient vector: eliminate the span, read free coords
    auto project = [&](long i, const CycVector& v) {
        CycVector red = spans.at(i).reduce(v);
        const auto& free = free_coords.at(i);
        CycVector out(free.size(), CyclotomicNumber::zero(field));
        for (size_t j = 0; j < free.size(); ++j) out[j] = red[free[j]];
        return out;
    };

    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        for (auto& [i, free] : free_coords) {
            if (free.empty()) continue;
            auto to = free_coords.find(i + nk);
            if (to == free_coords.end() || to->second.empty()) continue;
            Matrix mat(field, static_cast<long>(to->second.size()),
                       static_cast<long>(free.size()));
            for (size_t c = 0; c < free.size(); ++c) {
                CycVector e(M->dim(i), CyclotomicNumber::zero(field));
                e[free[c]] = CyclotomicNumber::one(field);
                CycVector img = M->apply(k, i, e);
                if (img.empty()) continue;
                CycVector out = project(i + nk, img);
                for (long r = 0; r < mat.rows(); ++r) mat.at(r, static_cast<long>(c)) = out[r];
            }
            raw.actions[k].emplace(i, std::move(mat));
        }
    }
    QuotientModule result;
    result.module = GradedModule::validate(std::move(raw));
    auto proj = std::make_shared<ModuleMap>(M, result.module, 0);
    for (auto& [i, free] : free_coords) {
        if (free.empty() || M->dim(i) == 0) continue;
        Matrix block(field, static_cast<long>(free.size()), M->dim(i));
        for (long c = 0; c < M->dim(i); ++c) {
            CycVector e(M->dim(i), CyclotomicNumber::zero(field));
            e[c] = CyclotomicNumber::one(field);
            CycVector out = project(i, e);
            for (long r = 0; r < block.rows(); ++r) block.at(r, c) = out[r];
        }
        proj->set_block(i, std::move(block));
    }
    if (!proj->is_intertwiner()) throw std::logic_error("quotient: projection fails to intertwine");
    result.projection = std::move(proj);
    return result;
}

}  // namespace oncat

#include "oncat/module_map.hpp"

namespace oncat {

HomShape::HomShape(const GradedModule& src, const GradedModule& dst, long degree) {
    for (auto& [i, d] : src.dims()) {
        long rows = dst.dim(i + degree);
        if (rows == 0) continue;
        pieces.push_back(Piece{i, rows, d, total});
        total += rows * d;
    }
}

const HomShape::Piece* HomShape::piece_at(long i) const {
    for (auto& p : pieces)
        if (p.i == i) return &p;
    return nullptr;
}

ModuleMap::ModuleMap(ModulePtr src, ModulePtr dst, long degree)
    : src_(std::move(src)), dst_(std::move(dst)), degree_(degree) {
    check_same_structure(*src_, *dst_);
}

ModuleMap ModuleMap::identity(const ModulePtr& m) {
    ModuleMap f(m, m, 0);
    for (auto& [i, d] : m->dims()) f.set_block(i, Matrix::identity(m->structure()->field(), d));
    return f;
}

const Matrix* ModuleMap::block(long i) const {
    auto it = blocks_.find(i);
    return it == blocks_.end() ? nullptr : &it->second;
}

void ModuleMap::set_block(long i, Matrix m) {
    if (m.rows() != dst_->dim(i + degree_) || m.cols() != src_->dim(i))
        throw ValidationError(ValidationError::Kind::ShapeMismatch,
                              "map block at degree " + std::to_string(i) + " has wrong shape", -1,
                              -1, i);
    if (m.is_zero())
        blocks_.erase(i);
    else
        blocks_.insert_or_assign(i, std::move(m));
}

CycVector ModuleMap::apply(long i, const CycVector& v) const {
    long target = dst_->dim(i + degree_);
    if (target == 0) return {};
    if (const Matrix* b = block(i)) return b->apply(v);
    return CycVector(target, CyclotomicNumber::zero(src_->structure()->field()));
}

ModuleMap ModuleMap::compose(const ModuleMap& inner) const {
    if (inner.dst_ != src_ && inner.dst_->dims() != src_->dims())
        throw std::invalid_argument("compose: target/source mismatch");
    ModuleMap out(inner.src_, dst_, degree_ + inner.degree_);
    for (auto& [i, b] : inner.blocks_) {
        const Matrix* mine = block(i + inner.degree_);
        if (!mine) continue;
        Matrix prod = (*mine) * b;
        if (!prod.is_zero()) out.set_block(i, std::move(prod));
    }
    return out;
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
    ModuleMap out(src_, dst_, degree_);
    for (auto& [i, b] : blocks_) out.blocks_.emplace(i, b);
    for (auto& [i, b] : o.blocks_) {
        auto it = out.blocks_.find(i);
        if (it == out.blocks_.end()) {
            out.blocks_.emplace(i, b);
        } else {
            it->second = it->second + b;
            if (it->second.is_zero()) out.blocks_.erase(it);
        }
    }
    return out;
}

ModuleMap ModuleMap::operator-(const ModuleMap& o) const {
    return *this + o.scaled(-CyclotomicNumber::one(src_->structure()->field()));
}

ModuleMap ModuleMap::scaled(const CyclotomicNumber& c) const {
    ModuleMap out(src_, dst_, degree_);
    if (c.is_zero()) return out;
    for (auto& [i, b] : blocks_) out.blocks_.emplace(i, b * c);
    return out;
}

bool ModuleMap::is_zero() const {
    for (auto& [i, b] : blocks_)
        if (!b.is_zero()) return false;
    return true;
}

bool ModuleMap::operator==(const ModuleMap& o) const {
    if (degree_ != o.degree_) return false;
    HomShape shape(*src_, *dst_, degree_);
    for (auto& p : shape.pieces) {
        const Matrix* a = block(p.i);
        const Matrix* b = o.block(p.i);
        if (a && b) {
            if (*a != *b) return false;
        } else if (a && !a->is_zero()) {
            return false;
        } else if (b && !b->is_zero()) {
            return false;
        }
    }
    return true;
}

bool ModuleMap::is_intertwiner() const {
    const auto& s = src_->structure();
    for (int k = 0; k < s->t(); ++k) {
        const long nk = s->n_k(k);
        for (auto& [i, dsrc] : src_->dims()) {
            long out_dim = dst_->dim(i + degree_ + nk);
            if (out_dim == 0) continue;
            // dst action after f at i, minus f at i+nk after src action
            Matrix lhs(s->field(), out_dim, dsrc);
            if (const Matrix* f = block(i))
                if (dst_->has_action(k, i + degree_)) lhs = dst_->action(k, i + degree_) * (*f);
            Matrix rhs(s->field(), out_dim, dsrc);
            if (src_->has_action(k, i))
                if (const Matrix* f2 = block(i + nk)) rhs = (*f2) * src_->action(k, i);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

std::optional<ModuleMap> ModuleMap::inverse() const {
    if (degree_ != 0) return std::nullopt;
    if (src_->dims() != dst_->dims()) return std::nullopt;
    ModuleMap out(dst_, src_, 0);
    for (auto& [i, d] : src_->dims()) {
        const Matrix* b = block(i);
        if (!b) return std::nullopt;  // zero block on equal nonzero dims
        auto inv = inverse_matrix(*b);
        if (!inv) return std::nullopt;
        out.set_block(i, std::move(*inv));
    }
    return out;
}

CycVector ModuleMap::to_coords() const {
    HomShape shape(*src_, *dst_, degree_);
    auto field = src_->structure()->field();
    CycVector v(shape.total, CyclotomicNumber::zero(field));
    for (auto& p : shape.pieces) {
        const Matrix* b = block(p.i);
        if (!b) continue;
        for (long r = 0; r < p.rows; ++r)
            for (long c = 0; c < p.cols; ++c) v[p.offset + r * p.cols + c] = b->at(r, c);
    }
    return v;
}

ModuleMap ModuleMap::from_coords(const ModulePtr& src, const ModulePtr& dst, long degree,
                                 const CycVector& coords) {
    HomShape shape(*src, *dst, degree);
    if (static_cast<long>(coords.size()) != shape.total)
        throw std::invalid_argument("from_coords: wrong length");
    ModuleMap f(src, dst, degree);
    auto field = src->structure()->field();
    for (auto& p : shape.pieces) {
        Matrix b(field, p.rows, p.cols);
        bool nonzero = false;
        for (long r = 0; r < p.rows; ++r)
            for (long c = 0; c < p.cols; ++c) {
                b.at(r, c) = coords[p.offset + r * p.cols + c];
                if (!b.at(r, c).is_zero()) nonzero = true;
            }
        if (nonzero) f.set_block(p.i, std::move(b));
    }
    return f;
}

}  // namespace oncat

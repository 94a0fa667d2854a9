#include "eqd/ratmat.hpp"

namespace eqd {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return RatMatrix(0, 0);
    RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r) {
        if (rows[std::size_t(r)].size() != rows[0].size())
            throw std::invalid_argument("ragged rows");
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[std::size_t(r)][std::size_t(c)];
    }
    return m;
}

RatMatrix RatMatrix::from_int(const IntMatrix& src) {
    RatMatrix m(src.rows(), src.cols());
    for (int r = 0; r < src.rows(); ++r)
        for (int c = 0; c < src.cols(); ++c) m.at(r, c) = Rat(src.at(r, c));
    return m;
}

std::vector<Rat> RatMatrix::row(int r) const {
    std::vector<Rat> v(static_cast<std::size_t>(cols_));
    for (int c = 0; c < cols_; ++c) v[std::size_t(c)] = at(r, c);
    return v;
}

void RatMatrix::append_row(const std::vector<Rat>& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(v.size());
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    RatMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    RatMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
    RatMatrix m(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Rat& x = at(r, k);
            if (x == 0) continue;
            for (int c = 0; c < o.cols_; ++c) m.at(r, c) += x * o.at(k, c);
        }
    return m;
}

RatMatrix RatMatrix::scaled(const Rat& s) const {
    RatMatrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r)
        for (int c = r + 1; c < cols_; ++c)
            if (at(r, c) != at(c, r)) return false;
    return true;
}

std::vector<Rat> mat_vec(const RatMatrix& m, const std::vector<Rat>& v) {
    if (static_cast<int>(v.size()) != m.cols()) throw std::invalid_argument("shape mismatch");
    std::vector<Rat> out(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) {
        Rat s = 0;
        for (int c = 0; c < m.cols(); ++c)
            if (m.at(r, c) != 0) s += m.at(r, c) * v[std::size_t(c)];
        out[std::size_t(r)] = s;
    }
    return out;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat det_rat(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const int n = m.rows();
    if (n == 0) return Rat(1);
    IntMatrix im(n, n);
    Rat scale = 1;  // det(int matrix) == det(m) * scale
    for (int r = 0; r < n; ++r) {
        BigInt l = 1;
        for (int c = 0; c < n; ++c)
            l = big_lcm(l, BigInt(m.at(r, c).get_den()));
        for (int c = 0; c < n; ++c) {
            Rat x = m.at(r, c) * Rat(l);
            im.at(r, c) = x.get_num();
        }
        scale *= Rat(l);
    }
    return Rat(det_bareiss(im)) / scale;
}

Echelon reduced_row_echelon(const RatMatrix& m) {
    RatMatrix w = m;
    std::vector<int> pivots;
    int pr = 0;
    for (int c = 0; c < w.cols() && pr < w.rows(); ++c) {
        int p = -1;
        for (int r = pr; r < w.rows(); ++r)
            if (w.at(r, c) != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        if (p != pr)
            for (int cc = 0; cc < w.cols(); ++cc) std::swap(w.at(p, cc), w.at(pr, cc));
        Rat inv = Rat(1) / w.at(pr, c);
        for (int cc = c; cc < w.cols(); ++cc) w.at(pr, cc) *= inv;
        for (int r = 0; r < w.rows(); ++r) {
            if (r == pr || w.at(r, c) == 0) continue;
            Rat f = w.at(r, c);
            for (int cc = c; cc < w.cols(); ++cc) w.at(r, cc) -= f * w.at(pr, cc);
        }
        pivots.push_back(c);
        ++pr;
    }
    Echelon e;
    e.pivot_cols = pivots;
    RatMatrix red(static_cast<int>(pivots.size()), w.cols());
    for (int r = 0; r < red.rows(); ++r)
        for (int c = 0; c < w.cols(); ++c) red.at(r, c) = w.at(r, c);
    e.reduced = std::move(red);
    return e;
}

int rank_rat(const RatMatrix& m) {
    return static_cast<int>(reduced_row_echelon(m).pivot_cols.size());
}

std::optional<std::vector<Rat>> solve_in_rowspace(const Echelon& e, const std::vector<Rat>& v) {
    if (static_cast<int>(v.size()) != e.reduced.cols())
        throw std::invalid_argument("dimension mismatch");
    std::vector<Rat> residual = v;
    std::vector<Rat> coeffs(static_cast<std::size_t>(e.reduced.rows()));
    for (int r = 0; r < e.reduced.rows(); ++r) {
        Rat q = residual[std::size_t(e.pivot_cols[std::size_t(r)])];
        coeffs[std::size_t(r)] = q;
        if (q != 0)
            for (int c = 0; c < e.reduced.cols(); ++c)
                residual[std::size_t(c)] -= q * e.reduced.at(r, c);
    }
    for (const auto& x : residual)
        if (x != 0) return std::nullopt;
    return coeffs;
}

}  // namespace eqd

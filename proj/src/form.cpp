/*
   Copyright 2026 The ffqf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ffqf/form.hpp"

#include <algorithm>
#include <numeric>

#include "ffqf/error.hpp"

namespace ffqf {

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(const Field& field, int n) : field_(&field), n_(n), a_(static_cast<std::size_t>(n * n), Poly(field)) {
    if (n < 1) throw DomainError("matrix size must be positive");
}

PolyMatrix PolyMatrix::identity(const Field& field, int n) {
    PolyMatrix m(field, n);
    for (int i = 0; i < n; ++i) m(i, i) = Poly::constant(field, 1);
    return m;
}

PolyMatrix PolyMatrix::constant(const Field& field, int n, std::span<const Field::Elem> entries) {
    if (entries.size() != static_cast<std::size_t>(n * n)) throw DomainError("wrong number of matrix entries");
    PolyMatrix m(field, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Poly::constant(field, entries[static_cast<std::size_t>(i * n + j)]);
    return m;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(*field_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

namespace {

Poly det_of(const std::vector<const Poly*>& m, int n, const Field& F) {
    if (n == 1) return *m[0];
    if (n == 2) return (*m[0]) * (*m[3]) - (*m[1]) * (*m[2]);
    Poly acc(F);
    std::vector<const Poly*> minor(static_cast<std::size_t>((n - 1) * (n - 1)));
    for (int c = 0; c < n; ++c) {
        if (m[static_cast<std::size_t>(c)]->is_zero()) continue;
        std::size_t k = 0;
        for (int i = 1; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (j != c) minor[k++] = m[static_cast<std::size_t>(i * n + j)];
        Poly term = (*m[static_cast<std::size_t>(c)]) * det_of(minor, n - 1, F);
        if (c % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

}  // namespace

Poly PolyMatrix::determinant() const {
    std::vector<const Poly*> ptrs;
    ptrs.reserve(a_.size());
    for (const auto& p : a_) ptrs.push_back(&p);
    return det_of(ptrs, n_, *field_);
}

PolyMatrix PolyMatrix::adjugate() const {
    PolyMatrix adj(*field_, n_);
    if (n_ == 1) {
        adj(0, 0) = Poly::constant(*field_, 1);
        return adj;
    }
    std::vector<const Poly*> minor(static_cast<std::size_t>((n_ - 1) * (n_ - 1)));
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            std::size_t k = 0;
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    if (i != r && j != c) minor[k++] = &(*this)(i, j);
            Poly d = det_of(minor, n_ - 1, *field_);
            adj(c, r) = ((r + c) % 2) ? -d : d;
        }
    return adj;
}

PolyMatrix PolyMatrix::inverse() const {
    const Poly d = determinant();
    if (d.degree() != 0) throw DomainError("matrix is not invertible over A");
    PolyMatrix adj = adjugate();
    const auto inv = field_->inv(d.lead());
    for (auto& p : adj.a_) p = p.scaled(inv);
    return adj;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.n_ != b.n_ || a.field_ != b.field_) throw DomainError("matrix shape or field mismatch");
    PolyMatrix r(*a.field_, a.n_);
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < a.n_; ++j) {
            Poly acc(*a.field_);
            for (int k = 0; k < a.n_; ++k)
                if (!a(i, k).is_zero() && !b(k, j).is_zero()) acc += a(i, k) * b(k, j);
            r(i, j) = std::move(acc);
        }
    return r;
}

std::string PolyMatrix::to_string() const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
        s += i ? ", [" : "[";
        for (int j = 0; j < n_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
        s += "]";
    }
    return s + "]";
}

// ---------------------------------------------------------------------- Form

Form::Form(PolyMatrix gram) : gram_(std::move(gram)) {
    const int n = gram_.size();
    if (n < 2 || n > 4) throw DomainError("form rank must be between 2 and 4");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (gram_(i, j) != gram_(j, i)) throw DomainError("Gram matrix is not symmetric");
    if (gram_.determinant().is_zero()) throw DomainError("degenerate form");
}

Form Form::binary(const Poly& a, const Poly& b, const Poly& c) {
    PolyMatrix m(a.field(), 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = b;
    m(1, 1) = c;
    return Form(std::move(m));
}

Form Form::diagonal(const std::vector<Poly>& entries) {
    if (entries.empty()) throw DomainError("empty diagonal");
    PolyMatrix m(entries.front().field(), static_cast<int>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = entries[i];
    return Form(std::move(m));
}

Poly Form::bilinear(std::span<const Poly> x, std::span<const Poly> y) const {
    const int n = rank();
    if (x.size() != static_cast<std::size_t>(n) || y.size() != static_cast<std::size_t>(n))
        throw DomainError("vector length does not match form rank");
    Poly acc(field());
    for (int i = 0; i < n; ++i) {
        if (x[static_cast<std::size_t>(i)].is_zero()) continue;
        Poly row(field());
        for (int j = 0; j < n; ++j)
            if (!y[static_cast<std::size_t>(j)].is_zero() && !gram_(i, j).is_zero()) row += gram_(i, j) * y[static_cast<std::size_t>(j)];
        acc += x[static_cast<std::size_t>(i)] * row;
    }
    return acc;
}

Poly Form::evaluate(std::span<const Poly> x) const { return bilinear(x, x); }

Form Form::transformed(const PolyMatrix& T) const { return Form(T.transpose() * gram_ * T); }

Form Form::scaled(const Poly& c) const {
    PolyMatrix m = gram_;
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) m(i, j) = m(i, j) * c;
    return Form(std::move(m));
}

std::string Form::to_string() const {
    const int n = rank();
    if (n == 2) return "(" + gram_(0, 0).to_string() + ", " + gram_(0, 1).to_string() + ", " + gram_(1, 1).to_string() + ")";
    std::string s = "(";
    for (int i = 0; i < n; ++i) s += (i ? ", " : "") + gram_(i, i).to_string();
    s += ";";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += " " + gram_(i, j).to_string() + ((i == n - 2) ? "" : ",");
    return s + ")";
}

std::strong_ordering Form::operator<=>(const Form& o) const {
    if (auto c = rank() <=> o.rank(); c != 0) return c;
    for (int i = 0; i < rank(); ++i)
        if (auto c = gram_(i, i) <=> o.gram_(i, i); c != 0) return c;
    for (int i = 0; i < rank(); ++i)
        for (int j = i + 1; j < rank(); ++j)
            if (auto c = gram_(i, j) <=> o.gram_(i, j); c != 0) return c;
    return std::strong_ordering::equal;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Form parse_form(const Field& field, std::string_view text) {
    std::string_view s = trim(text);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("form literal must be parenthesized: " + std::string(text));
    s = s.substr(1, s.size() - 2);
    auto halves = split(s, ';');
    if (halves.size() > 2) throw ParseError("too many ';' in form literal");
    auto parse_list = [&](std::string_view part) {
        std::vector<Poly> out;
        for (auto item : split(part, ',')) out.push_back(parse_poly(field, item));
        return out;
    };
    if (halves.size() == 1) {
        auto v = parse_list(halves[0]);
        if (v.size() != 3) throw ParseError("binary form literal needs three entries");
        return Form::binary(v[0], v[1], v[2]);
    }
    auto diag = parse_list(halves[0]);
    auto off = parse_list(halves[1]);
    const int n = static_cast<int>(diag.size());
    if (n < 2 || n > 4 || off.size() != static_cast<std::size_t>(n * (n - 1) / 2))
        throw ParseError("form literal has inconsistent entry counts");
    PolyMatrix m(field, n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = off[k];
            m(j, i) = off[k];
            ++k;
        }
    return Form(std::move(m));
}

Transformation::Transformation(PolyMatrix m) : matrix(std::move(m)) {
    const Poly d = matrix.determinant();
    if (d.degree() != 0) throw DomainError("transformation is not in GL_n(A)");
    det_value = {&matrix.field(), d.lead()};
}

// ------------------------------------------------------------- invariants

Poly discriminant(const Form& Q) {
    const int n = Q.rank();
    Poly d = Q.gram().determinant();
    return ((n * (n - 1) / 2) % 2) ? -d : d;
}

SquareClass disc_class(const Form& Q) { return square_class(discriminant(Q)); }

std::vector<Poly> diagonalize_over_k(const Form& Q) {
    const Field& F = Q.field();
    PolyMatrix M = Q.gram();
    int n = M.size();
    Poly multiplier = Poly::constant(F, 1);
    std::vector<Poly> out;
    // The remaining block is isometric to multiplier * M over K.
    while (n > 0) {
        int pivot = -1;
        for (int i = 0; i < n && pivot < 0; ++i)
            if (!M(i, i).is_zero()) pivot = i;
        if (pivot < 0) {
            int r = -1, c = -1;
            for (int i = 0; i < n && r < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!M(i, j).is_zero()) {
                        r = i;
                        c = j;
                        break;
                    }
            if (r < 0) throw DomainError("degenerate form");
            // e_r <- e_r + e_c makes the diagonal entry 2 m_rc != 0.
            for (int k = 0; k < n; ++k) M(r, k) = M(r, k) + M(c, k);
            for (int k = 0; k < n; ++k) M(k, r) = M(k, r) + M(k, c);
            pivot = r;
        }
        const Poly pi = M(pivot, pivot);
        out.push_back(multiplier * pi);
        PolyMatrix next(F, std::max(n - 1, 1));
        int ri = 0;
        for (int i = 0; i < n; ++i) {
            if (i == pivot) continue;
            int rj = 0;
            for (int j = 0; j < n; ++j) {
                if (j == pivot) continue;
                next(ri, rj) = pi * M(i, j) - M(i, pivot) * M(pivot, j);
                ++rj;
            }
            ++ri;
        }
        multiplier = multiplier * pi;
        --n;
        if (n > 0) M = std::move(next);
    }
    return out;
}

bool is_definite_discriminant(const Poly& D) {
    if (D.is_zero()) return false;
    if (D.degree() % 2) return true;
    return D.field().legendre(D.lead()) == -1;
}

namespace {

// Anisotropy of a diagonal form over F_q.
bool residue_form_anisotropic(const Field& F, const std::vector<Field::Elem>& units) {
    if (units.size() >= 3) return false;
    if (units.size() == 2) return F.legendre(F.neg(F.mul(units[0], units[1]))) == -1;
    return true;
}

}  // namespace

bool is_definite(const Form& Q) {
    if (Q.rank() == 2) return is_definite_discriminant(discriminant(Q));
    const Field& F = Q.field();
    std::vector<Field::Elem> even, odd;
    for (const auto& d : diagonalize_over_k(Q)) (d.degree() % 2 ? odd : even).push_back(d.lead());
    return residue_form_anisotropic(F, even) && residue_form_anisotropic(F, odd);
}

PrimitivePart primitive_part(const Form& Q) {
    const Field& F = Q.field();
    Poly g(F);
    for (int i = 0; i < Q.rank(); ++i)
        for (int j = i; j < Q.rank(); ++j)
            if (!Q(i, j).is_zero()) g = g.is_zero() ? Q(i, j).monic() : gcd(g, Q(i, j));
    PolyMatrix m = Q.gram();
    for (int i = 0; i < Q.rank(); ++i)
        for (int j = 0; j < Q.rank(); ++j) m(i, j) = exact_div(m(i, j), g);
    return {Form(std::move(m)), g};
}

bool is_primitive(const Form& Q) { return primitive_part(Q).content.is_one(); }

bool is_reduced(const Form& Q) {
    const int n = Q.rank();
    for (int i = 0; i < n; ++i) {
        if (Q(i, i).is_zero()) return false;
        if (i + 1 < n && Q(i, i).degree() > Q(i + 1, i + 1).degree()) return false;
        for (int j = i + 1; j < n; ++j)
            if (Q(i, j).degree() >= Q(i, i).degree()) return false;
    }
    return true;
}

namespace {

// Swaps basis vectors i and j in both the Gram matrix and the transformation.
void swap_basis(PolyMatrix& M, PolyMatrix& T, int i, int j) {
    const int n = M.size();
    for (int k = 0; k < n; ++k) std::swap(M(i, k), M(j, k));
    for (int k = 0; k < n; ++k) std::swap(M(k, i), M(k, j));
    for (int k = 0; k < n; ++k) std::swap(T(k, i), T(k, j));
}

// e_j <- e_j - k e_i.
void shear_basis(PolyMatrix& M, PolyMatrix& T, int i, int j, const Poly& k) {
    const int n = M.size();
    const Poly mij = M(i, j);
    M(j, j) = M(j, j) - (k * mij).scaled(M.field().from_int(2)) + k * k * M(i, i);
    for (int l = 0; l < n; ++l) {
        if (l == j) continue;
        M(j, l) = M(j, l) - k * M(i, l);
        M(l, j) = M(j, l);
    }
    for (int r = 0; r < n; ++r) T(r, j) = T(r, j) - k * T(r, i);
}

}  // namespace

Reduction reduce(const Form& Q) {
    if (!is_definite(Q)) throw DomainError("reduce requires a definite form: " + Q.to_string());
    const Field& F = Q.field();
    const int n = Q.rank();
    PolyMatrix M = Q.gram();
    PolyMatrix T = PolyMatrix::identity(F, n);
    constexpr int kMaxRounds = 100000;
    for (int round = 0; round < kMaxRounds; ++round) {
        bool changed = false;
        // Stable insertion sort on diagonal degrees.
        for (int i = 1; i < n; ++i)
            for (int j = i; j > 0 && M(j - 1, j - 1).degree() > M(j, j).degree(); --j) {
                swap_basis(M, T, j - 1, j);
                changed = true;
            }
        for (int i = 0; i < n && !changed; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (M(i, j).degree() < M(i, i).degree()) continue;
                const Poly k = divmod(M(i, j), M(i, i)).quotient;
                shear_basis(M, T, i, j, k);
                changed = true;
            }
        if (!changed) return {Form(std::move(M)), Transformation(std::move(T))};
    }
    throw DomainError("reduction did not stabilize for " + Q.to_string());
}

MinimaSeq successive_minima(const Form& Q) {
    const Form R = reduce(Q).form;
    MinimaSeq m;
    for (int i = 0; i < R.rank(); ++i) m.degrees.push_back(R(i, i).degree());
    return m;
}

Form norm_form(const Poly& D) {
    const Field& F = D.field();
    return Form::binary(Poly::constant(F, 1), Poly(F), -D);
}

}  // namespace ffqf

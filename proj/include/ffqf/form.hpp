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

#ifndef FFQF_FORM_HPP
#define FFQF_FORM_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffqf/factor.hpp"
#include "ffqf/poly.hpp"

namespace ffqf {

/// Dense n x n matrix over A = F_q[t], row major.
class PolyMatrix {
   public:
    PolyMatrix(const Field& field, int n);
    static PolyMatrix identity(const Field& field, int n);
    /// Entries given as field codes, row major.
    static PolyMatrix constant(const Field& field, int n, std::span<const Field::Elem> entries);

    int size() const noexcept { return n_; }
    const Field& field() const noexcept { return *field_; }
    Poly& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    const Poly& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

    PolyMatrix transpose() const;
    Poly determinant() const;
    PolyMatrix adjugate() const;
    /// Inverse in GL_n(A); throws DomainError unless the determinant is a
    /// nonzero constant.
    PolyMatrix inverse() const;

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    bool operator==(const PolyMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    /// `[[a, b], [c, d]]` with canonical polynomial strings.
    std::string to_string() const;

   private:
    const Field* field_;
    int n_;
    std::vector<Poly> a_;
};

/// Quadratic form Q(x) = sum m_ij x_i x_j over A given by its symmetric Gram
/// matrix. The binary form (a, b, c) is a X^2 + 2b XY + c Y^2, i.e. Gram
/// [[a, b], [b, c]]. Rank is 2..4 and the Gram determinant is nonzero.
class Form {
   public:
    explicit Form(PolyMatrix gram);
    static Form binary(const Poly& a, const Poly& b, const Poly& c);
    static Form diagonal(const std::vector<Poly>& entries);

    int rank() const noexcept { return gram_.size(); }
    const Field& field() const noexcept { return gram_.field(); }
    const PolyMatrix& gram() const noexcept { return gram_; }
    const Poly& operator()(int i, int j) const { return gram_(i, j); }

    Poly evaluate(std::span<const Poly> x) const;
    /// Polar form B(x, y) with B(x, x) = Q(x).
    Poly bilinear(std::span<const Poly> x, std::span<const Poly> y) const;
    /// Q o T, Gram T^t M T.
    Form transformed(const PolyMatrix& T) const;
    Form scaled(const Poly& c) const;

    /// Literal: `(a, b, c)` for binary forms, `(m11, m22, m33; m12, m13, m23)`
    /// for ternary ones (rank 4 analogously).
    std::string to_string() const;

    bool operator==(const Form& o) const { return gram_ == o.gram_; }
    /// Canonical order: diagonal entries first, then upper off-diagonals.
    std::strong_ordering operator<=>(const Form& o) const;

   private:
    PolyMatrix gram_;
};

Form parse_form(const Field& field, std::string_view text);

/// Change of variables in GL_n(A).
struct Transformation {
    PolyMatrix matrix;
    FieldElem det_value;

    /// Validates det(matrix) in F_q^x.
    explicit Transformation(PolyMatrix m);
    static Transformation identity(const Field& field, int n) { return Transformation(PolyMatrix::identity(field, n)); }
};

/// Successive minima: diagonal degrees of a reduced representative.
struct MinimaSeq {
    std::vector<int> degrees;
    bool operator==(const MinimaSeq&) const = default;
    auto operator<=>(const MinimaSeq&) const = default;
    int operator[](std::size_t i) const { return degrees.at(i); }
};

/// (-1)^(n(n-1)/2) det(M); for binary forms b^2 - ac.
Poly discriminant(const Form& Q);
SquareClass disc_class(const Form& Q);

/// Diagonal entries <d_1, ..., d_n> of a form isometric to Q over K = F_q(t).
std::vector<Poly> diagonalize_over_k(const Form& Q);

/// Anisotropic over F_q((1/t)).
bool is_definite(const Form& Q);
/// The binary criterion on a discriminant: odd degree, or even degree with a
/// non-square leading coefficient.
bool is_definite_discriminant(const Poly& D);

struct PrimitivePart {
    Form form;
    Poly content;  // monic gcd of the Gram entries
};
PrimitivePart primitive_part(const Form& Q);
bool is_primitive(const Form& Q);

/// deg m_ii <= deg m_jj for i <= j and deg m_ij < deg m_ii for i < j.
bool is_reduced(const Form& Q);

struct Reduction {
    Form form;
    Transformation transform;  // Q o transform = form
};
/// Sort-and-shear reduction. Throws DomainError for non-definite input.
Reduction reduce(const Form& Q);

MinimaSeq successive_minima(const Form& Q);

/// The binary norm form (1, 0, -D).
Form norm_form(const Poly& D);

}  // namespace ffqf

#endif

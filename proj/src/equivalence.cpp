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

#include "ffqf/equivalence.hpp"

#include "ffqf/error.hpp"

namespace ffqf {

namespace {

struct Candidate {
    std::vector<Field::Elem> v;
    std::vector<Poly> as_poly;
};

std::optional<Transformation> search(const Form& Q, const Form& Q2, bool proper, std::uint64_t budget) {
    if (&Q.field() != &Q2.field()) throw DomainError("forms over different fields");
    if (Q.rank() != Q2.rank()) throw DomainError("forms of different rank");
    if (disc_class(Q) != disc_class(Q2)) return std::nullopt;
    if (proper && discriminant(Q) != discriminant(Q2)) return std::nullopt;
    const Reduction r1 = reduce(Q);
    const Reduction r2 = reduce(Q2);
    for (int i = 0; i < Q.rank(); ++i)
        if (r1.form(i, i).degree() != r2.form(i, i).degree()) return std::nullopt;

    const Field& F = Q.field();
    // Q o (T1 U T2^-1) = Q2, so det U must be det T2 / det T1 for a proper witness.
    const Field::Elem wanted = F.div(r2.transform.det_value.value, r1.transform.det_value.value);
    std::optional<PolyMatrix> found;
    for_each_constant_isometry(
        r1.form, r2.form,
        [&](const PolyMatrix& U) {
            if (proper && U.determinant().coeff(0) != wanted) return true;
            found = U;
            return false;
        },
        budget);
    if (!found) return std::nullopt;
    return Transformation(r1.transform.matrix * (*found) * r2.transform.matrix.inverse());
}

}  // namespace

void for_each_constant_isometry(const Form& R, const Form& R2, const std::function<bool(const PolyMatrix&)>& visit,
                                std::uint64_t column_budget) {
    const Field& F = R.field();
    const int n = R.rank();
    std::uint64_t columns = 1;
    for (int i = 0; i < n; ++i) {
        columns *= F.q();
        if (columns > column_budget)
            throw CapabilityError("equivalence search over GL_" + std::to_string(n) + "(F_" + std::to_string(F.q()) +
                                  ") exceeds the column budget");
    }

    // Candidates for column j: nonzero v in F_q^n with R(v) = R2_jj.
    std::vector<std::vector<Candidate>> cands(static_cast<std::size_t>(n));
    std::vector<Field::Elem> v(static_cast<std::size_t>(n));
    for (std::uint64_t code = 1; code < columns; ++code) {
        std::uint64_t c = code;
        for (int i = 0; i < n; ++i, c /= F.q()) v[static_cast<std::size_t>(i)] = static_cast<Field::Elem>(c % F.q());
        std::vector<Poly> vp;
        for (auto x : v) vp.push_back(Poly::constant(F, x));
        const Poly val = R.evaluate(vp);
        for (int j = 0; j < n; ++j)
            if (val == R2(j, j)) cands[static_cast<std::size_t>(j)].push_back({v, vp});
    }

    std::vector<const Candidate*> chosen(static_cast<std::size_t>(n), nullptr);
    std::function<bool(int)> extend = [&](int j) -> bool {
        if (j == n) {
            std::vector<Field::Elem> entries(static_cast<std::size_t>(n * n));
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) entries[static_cast<std::size_t>(r * n + c)] = chosen[static_cast<std::size_t>(c)]->v[static_cast<std::size_t>(r)];
            return visit(PolyMatrix::constant(F, n, entries));
        }
        for (const auto& cand : cands[static_cast<std::size_t>(j)]) {
            bool ok = true;
            for (int i = 0; i < j && ok; ++i)
                ok = R.bilinear(chosen[static_cast<std::size_t>(i)]->as_poly, cand.as_poly) == R2(i, j);
            if (!ok) continue;
            chosen[static_cast<std::size_t>(j)] = &cand;
            if (!extend(j + 1)) return false;
        }
        return true;
    };
    extend(0);
}

std::optional<Transformation> equivalent(const Form& Q, const Form& Q2, std::uint64_t column_budget) {
    return search(Q, Q2, false, column_budget);
}

std::optional<Transformation> properly_equivalent(const Form& Q, const Form& Q2, std::uint64_t column_budget) {
    return search(Q, Q2, true, column_budget);
}

}  // namespace ffqf

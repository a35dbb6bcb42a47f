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
#ifndef FFQF_TEST_ORACLES_HPP
#define FFQF_TEST_ORACLES_HPP

#include <functional>
#include <stdexcept>
#include <set>
#include <vector>

#include "ffqf/factor.hpp"
#include "ffqf/form.hpp"

namespace ffqf::testing {

/// Naive V_k: evaluate the form on every coordinate vector with deg x_i <= bounds[i]
/// and keep values of degree <= k. Plain Poly arithmetic throughout.
inline std::set<Poly> naive_values(const Form& Q, const std::vector<int>& bounds, int k) {
    const Field& F = Q.field();
    const int n = Q.rank();
    std::vector<std::vector<Poly>> choices(n), diag(n);
    for (int i = 0; i < n; ++i) {
        choices[i] = bounds[i] < 0 ? std::vector<Poly>{Poly(F)} : all_polys_upto(F, bounds[i]);
        for (const auto& x : choices[i]) diag[i].push_back(Q(i, i) * x * x);
    }
    std::set<Poly> out;
    std::vector<const Poly*> x(n);
    std::function<void(int, const Poly&)> rec = [&](int i, const Poly& partial) {
        if (i == n) {
            if (partial.degree() <= k) out.insert(partial);
            return;
        }
        for (std::size_t c = 0; c < choices[i].size(); ++c) {
            Poly v = partial + diag[i][c];
            const Poly& xi = choices[i][c];
            if (!xi.is_zero())
                for (int j = 0; j < i; ++j)
                    if (!Q(i, j).is_zero() && !x[j]->is_zero()) v += (Q(i, j) * (*x[j]) * xi).scaled(2);
            x[i] = &xi;
            rec(i + 1, v);
        }
    };
    rec(0, Poly(F));
    return out;
}

inline std::vector<int> inflate(std::vector<int> bounds, int by) {
    for (auto& b : bounds) b = std::max(b, -1) + by;
    return bounds;
}

inline Form ternary_family(const Field& F, Field::Elem a) {
    const Poly t = Poly::t(F);
    return Form::diagonal({Poly::constant(F, 1), t, -(t + Poly::constant(F, F.mul(a, a))).scaled(F.delta())});
}

/// Hensel search: some x mod p^(2N+1) with Q(x) = f and a partial derivative of
/// valuation <= N, where N = v_p(disc) + v_p(f) + 1. Depth-first over p-adic digits.
inline bool hensel_search(const Form& Q, const Poly& f, const Poly& p, std::uint64_t node_budget = 5'000'000) {
    const Field& F = Q.field();
    const int n = Q.rank();
    const int N = valuation(discriminant(Q), p) + valuation(f, p) + 1;
    const int M = 2 * N + 1;
    const auto digits = all_polys_upto(F, p.degree() - 1);
    std::vector<Poly> pw{Poly::constant(F, 1)};
    for (int j = 0; j <= M; ++j) pw.push_back(pw.back() * p);
    std::uint64_t nodes = 0;
    std::vector<Poly> x(n, Poly(F));
    std::function<bool(int)> dfs = [&](int j) -> bool {
        if (j == M) {
            int s = M;
            for (int i = 0; i < n; ++i) {
                Poly g(F);
                for (int l = 0; l < n; ++l) g += Q(i, l) * x[l];
                g = g % pw[M];
                if (!g.is_zero()) s = std::min(s, valuation(g, p));
            }
            return s <= N;
        }
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            if (++nodes > node_budget) throw std::runtime_error("hensel_search budget");
            std::vector<Poly> saved = x;
            for (int i = 0; i < n; ++i) x[i] = x[i] + digits[idx[i]] * pw[j];
            if ((Q.evaluate(x) - f) % pw[j + 1] == Poly(F) && dfs(j + 1)) return true;
            x = saved;
            int i = 0;
            while (i < n && ++idx[i] == digits.size()) idx[i++] = 0;
            if (i == n) return false;
        }
    };
    return dfs(0);
}

}  // namespace ffqf::testing

#endif

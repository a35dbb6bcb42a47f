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

#include "ffqf/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "ffqf/error.hpp"
#include "ffqf/factor.hpp"

namespace ffqf {

namespace {

struct FormKey {
    Poly a, b, c;
    bool operator==(const FormKey&) const = default;
};

struct FormKeyHash {
    std::size_t operator()(const FormKey& k) const noexcept {
        std::hash<Poly> h;
        return h(k.a) * 1000003u ^ h(k.b) * 10007u ^ h(k.c);
    }
};

FormKey key_of(const Form& f) { return {f(0, 0), f(0, 1), f(1, 1)}; }

// Images of the reduced form R under constant matrices of determinant 1 that
// keep it reduced.
template <class Visit>
void proper_reduced_images(const Form& R, Visit&& visit) {
    const Field& F = R.field();
    const Poly &a = R(0, 0), &b = R(0, 1), &c = R(1, 1);
    const int mu1 = a.degree(), mu2 = c.degree();
    auto lin = [&](Field::Elem x, const Poly& f, Field::Elem y, const Poly& g, Field::Elem z, const Poly& h) {
        return f.scaled(x) + g.scaled(y) + h.scaled(z);
    };
    if (mu1 < mu2) {
        for (Field::Elem al = 1; al < F.q(); ++al) {
            const Field::Elem ai = F.inv(al);
            visit(Form::binary(a.scaled(F.mul(al, al)), b, c.scaled(F.mul(ai, ai))));
        }
        return;
    }
    const Field::Elem la = a.lead(), lc = c.lead();
    for (Field::Elem al = 0; al < F.q(); ++al)
        for (Field::Elem ga = 0; ga < F.q(); ++ga) {
            if (al == 0 && ga == 0) continue;
            // alpha*eps - beta*gamma = 1 and alpha*beta*la + gamma*eps*lc = 0.
            const Field::Elem det = F.add(F.mul(F.mul(al, al), la), F.mul(F.mul(ga, ga), lc));
            if (det == 0) continue;  // cannot happen for definite forms
            const Field::Elem be = F.div(F.neg(F.mul(ga, lc)), det);
            const Field::Elem ep = F.div(F.mul(al, la), det);
            const Poly a2 = lin(F.mul(al, al), a, F.mul(2 % F.p(), F.mul(al, ga)), b, F.mul(ga, ga), c);
            const Poly b2 = lin(F.mul(al, be), a, F.add(F.mul(al, ep), F.mul(be, ga)), b, F.mul(ga, ep), c);
            const Poly c2 = lin(F.mul(be, be), a, F.mul(2 % F.p(), F.mul(be, ep)), b, F.mul(ep, ep), c);
            visit(Form::binary(a2, b2, c2));
        }
}

}  // namespace

std::vector<Form> enumerate_forms(const Poly& D, bool primitive_only) {
    if (D.is_zero() || !is_definite_discriminant(D)) throw DomainError("discriminant " + D.to_string() + " is not definite");
    const Field& F = D.field();
    std::vector<Form> out;
    const int n = D.degree();
    for (const auto& a : all_polys_upto(F, n / 2)) {
        if (a.is_zero()) continue;
        const std::vector<Poly> bs = a.degree() == 0 ? std::vector<Poly>{Poly(F)} : all_polys_upto(F, a.degree() - 1);
        for (const auto& b : bs) {
            const auto qr = divmod(b * b - D, a);
            if (!qr.remainder.is_zero()) continue;
            const Poly& c = qr.quotient;
            if (c.degree() < a.degree()) continue;
            Form f = Form::binary(a, b, c);
            if (primitive_only && !is_primitive(f)) continue;
            out.push_back(std::move(f));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Poly> definite_discriminants(const Field& F, int max_degree) {
    std::vector<Poly> out;
    for (int d = 0; d <= max_degree; ++d) {
        std::vector<Field::Elem> leads;
        if (d % 2) leads = {1, F.delta()};
        else leads = {F.delta()};
        const auto tails = all_polys_upto(F, d - 1);
        for (auto l : leads)
            for (const auto& tail : tails) out.push_back(Poly::monomial(F, l, static_cast<unsigned>(d)) + tail);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<int> ClassTable::index_of(const Form& reduced) const {
    auto it = std::lower_bound(forms.begin(), forms.end(), reduced);
    if (it == forms.end() || !(*it == reduced)) return std::nullopt;
    return static_cast<int>(it - forms.begin());
}

int ClassTable::proper_count_in_genus(int g) const {
    int n = 0;
    for (int c : genera[static_cast<std::size_t>(g)])
        for (std::size_t pc = 0; pc < class_of_proper.size(); ++pc)
            if (class_of_proper[pc] == c) ++n;
    return n;
}

ClassTable class_table(const Poly& D, bool primitive_only) {
    ClassTable t{D};
    t.primitive_only = primitive_only;
    t.forms = enumerate_forms(D, primitive_only);
    const int n = static_cast<int>(t.forms.size());
    std::unordered_map<FormKey, int, FormKeyHash> index;
    for (int i = 0; i < n; ++i) index.emplace(key_of(t.forms[static_cast<std::size_t>(i)]), i);
    auto find = [&](const Form& f) {
        auto it = index.find(key_of(f));
        if (it == index.end()) throw DomainError("internal: image of a reduced form left the table");
        return it->second;
    };

    t.proper_class_of.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (t.proper_class_of[static_cast<std::size_t>(i)] >= 0) continue;
        const int id = static_cast<int>(t.proper_classes.size());
        std::vector<int> members{i};
        t.proper_class_of[static_cast<std::size_t>(i)] = id;
        proper_reduced_images(t.forms[static_cast<std::size_t>(i)], [&](const Form& img) {
            if (!is_reduced(img)) return;
            const int j = find(img);
            if (t.proper_class_of[static_cast<std::size_t>(j)] < 0) {
                t.proper_class_of[static_cast<std::size_t>(j)] = id;
                members.push_back(j);
            }
        });
        std::sort(members.begin(), members.end());
        t.proper_classes.push_back(std::move(members));
    }

    // Determinant -1 merges the proper class of (a, b, c) with that of (a, -b, c).
    std::vector<int> parent(t.proper_classes.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = root(parent[static_cast<std::size_t>(x)]); };
    for (int i = 0; i < n; ++i) {
        const Form& f = t.forms[static_cast<std::size_t>(i)];
        const int j = find(Form::binary(f(0, 0), -f(0, 1), f(1, 1)));
        int a = root(t.proper_class_of[static_cast<std::size_t>(i)]), b = root(t.proper_class_of[static_cast<std::size_t>(j)]);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::map<int, int> class_id;
    t.class_of_proper.resize(t.proper_classes.size());
    for (std::size_t pc = 0; pc < t.proper_classes.size(); ++pc) {
        const int r = root(static_cast<int>(pc));
        auto [it, fresh] = class_id.emplace(r, static_cast<int>(t.classes.size()));
        if (fresh) t.classes.emplace_back();
        t.class_of_proper[pc] = it->second;
    }
    t.class_of.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int c = t.class_of_proper[static_cast<std::size_t>(t.proper_class_of[static_cast<std::size_t>(i)])];
        t.class_of[static_cast<std::size_t>(i)] = c;
        t.classes[static_cast<std::size_t>(c)].push_back(i);
    }

    for (std::size_t c = 0; c < t.classes.size(); ++c) {
        GenusSymbol g = genus_symbol(t.forms[static_cast<std::size_t>(t.classes[c].front())]);
        int gid = -1;
        for (std::size_t k = 0; k < t.genus_symbols.size() && gid < 0; ++k)
            if (t.genus_symbols[k] == g) gid = static_cast<int>(k);
        if (gid < 0) {
            gid = static_cast<int>(t.genera.size());
            t.genera.emplace_back();
            t.genus_symbols.push_back(std::move(g));
        }
        t.genera[static_cast<std::size_t>(gid)].push_back(static_cast<int>(c));
        t.genus_of_class.push_back(gid);
    }
    return t;
}

int class_number(const Form& Q) {
    if (Q.rank() != 2) throw DomainError("class_number is defined for binary forms");
    const Poly D = discriminant(Q);
    const ClassTable t = class_table(D, is_primitive(Q));
    const Form R = reduce(Q).form;
    auto i = t.index_of(R);
    if (!i) throw DomainError("internal: reduced form missing from its class table");
    return t.class_number_of_class(t.class_of[static_cast<std::size_t>(*i)]);
}

bool cn1_prediction(const Form& Q) {
    const Poly D = discriminant(Q);
    if (D.degree() <= 1) return true;
    if (D.degree() != 2) return false;
    const int mu1 = successive_minima(Q)[0];
    if (mu1 == 1) return true;
    return mu1 == 0 && !is_irreducible(D);
}

Cn1Result cn1_classification(const Form& Q, const ClassTable& table) {
    Cn1Result r;
    r.applicable = Q.field().q() > 13;
    r.prediction = cn1_prediction(Q);
    auto i = table.index_of(reduce(Q).form);
    if (!i) throw DomainError("form is not in the supplied class table");
    r.observed_h = table.class_number_of_class(table.class_of[static_cast<std::size_t>(*i)]);
    return r;
}

Cn1Result cn1_classification(const Form& Q) {
    if (!is_primitive(Q)) throw DomainError("cn1_classification expects a primitive form");
    return cn1_classification(Q, class_table(discriminant(Q), true));
}

}  // namespace ffqf

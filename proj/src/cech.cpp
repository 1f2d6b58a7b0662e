#include "k3moduli/cech.hpp"

#include <algorithm>

#include "k3moduli/errors.hpp"

namespace k3moduli {

namespace {

template <size_t N>
void check_and_sort(std::vector<std::array<size_t, N>>& simplices, size_t vertices,
                    const char* what) {
    for (const auto& s : simplices) {
        for (size_t i = 0; i < N; ++i) {
            if (s[i] >= vertices)
                throw bad_input_error(std::string("Nerve: vertex index out of range in ") + what);
            if (i > 0 && s[i - 1] >= s[i])
                throw bad_input_error(std::string("Nerve: vertices must be strictly increasing in ") + what);
        }
    }
    std::sort(simplices.begin(), simplices.end());
    if (std::adjacent_find(simplices.begin(), simplices.end()) != simplices.end())
        throw bad_input_error(std::string("Nerve: duplicate ") + what);
}

template <size_t N>
std::optional<size_t> find_simplex(const std::vector<std::array<size_t, N>>& list,
                                   const std::array<size_t, N>& s) {
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || *it != s) return std::nullopt;
    return static_cast<size_t>(it - list.begin());
}

}  // namespace

Nerve::Nerve(size_t vertices, std::vector<std::array<size_t, 2>> e,
             std::vector<std::array<size_t, 3>> tri,
             std::vector<std::array<size_t, 4>> tet)
    : vertex_count(vertices), edges(std::move(e)), triangles(std::move(tri)),
      tetrahedra(std::move(tet)) {
    check_and_sort(edges, vertices, "edges");
    check_and_sort(triangles, vertices, "triangles");
    check_and_sort(tetrahedra, vertices, "tetrahedra");
    for (const auto& t : triangles) {
        const std::array<size_t, 2> faces[] = {{t[1], t[2]}, {t[0], t[2]}, {t[0], t[1]}};
        for (const auto& f : faces)
            if (!find_simplex(edges, f))
                throw bad_input_error("Nerve: triangle with a missing edge");
    }
    for (const auto& t : tetrahedra) {
        const std::array<size_t, 3> faces[] = {{t[1], t[2], t[3]},
                                               {t[0], t[2], t[3]},
                                               {t[0], t[1], t[3]},
                                               {t[0], t[1], t[2]}};
        for (const auto& f : faces)
            if (!find_simplex(triangles, f))
                throw bad_input_error("Nerve: tetrahedron with a missing triangle");
    }
}

Nerve Nerve::complete_skeleton(size_t vertices, int max_dim) {
    std::vector<std::array<size_t, 2>> e;
    std::vector<std::array<size_t, 3>> tri;
    std::vector<std::array<size_t, 4>> tet;
    if (max_dim >= 1)
        for (size_t a = 0; a < vertices; ++a)
            for (size_t b = a + 1; b < vertices; ++b) e.push_back({a, b});
    if (max_dim >= 2)
        for (size_t a = 0; a < vertices; ++a)
            for (size_t b = a + 1; b < vertices; ++b)
                for (size_t c = b + 1; c < vertices; ++c) tri.push_back({a, b, c});
    if (max_dim >= 3)
        for (size_t a = 0; a < vertices; ++a)
            for (size_t b = a + 1; b < vertices; ++b)
                for (size_t c = b + 1; c < vertices; ++c)
                    for (size_t d = c + 1; d < vertices; ++d) tet.push_back({a, b, c, d});
    return Nerve(vertices, std::move(e), std::move(tri), std::move(tet));
}

size_t Nerve::simplex_count(int dim) const {
    switch (dim) {
        case 0: return vertex_count;
        case 1: return edges.size();
        case 2: return triangles.size();
        case 3: return tetrahedra.size();
        default: return 0;
    }
}

IntMatrix Nerve::coboundary_matrix(int k) const {
    if (k < 0 || k > 2)
        throw bad_input_error("Nerve::coboundary_matrix: degree must be in [0, 2]");
    IntMatrix m(simplex_count(k + 1), simplex_count(k));
    if (k == 0) {
        for (size_t r = 0; r < edges.size(); ++r) {
            m(r, edges[r][1]) += 1;
            m(r, edges[r][0]) -= 1;
        }
    } else if (k == 1) {
        for (size_t r = 0; r < triangles.size(); ++r) {
            const auto& t = triangles[r];
            const std::array<size_t, 2> faces[] = {{t[1], t[2]}, {t[0], t[2]}, {t[0], t[1]}};
            int sign = 1;
            for (const auto& f : faces) {
                m(r, *find_simplex(edges, f)) += sign;
                sign = -sign;
            }
        }
    } else {
        for (size_t r = 0; r < tetrahedra.size(); ++r) {
            const auto& t = tetrahedra[r];
            const std::array<size_t, 3> faces[] = {{t[1], t[2], t[3]},
                                                   {t[0], t[2], t[3]},
                                                   {t[0], t[1], t[3]},
                                                   {t[0], t[1], t[2]}};
            int sign = 1;
            for (const auto& f : faces) {
                m(r, *find_simplex(triangles, f)) += sign;
                sign = -sign;
            }
        }
    }
    return m;
}

namespace {

Rat normalize_value(const Rat& x, const Int& modulus) {
    if (modulus == 0) return mod_one(x);
    if (boost::multiprecision::denominator(x) != 1)
        throw bad_input_error("Cochain: mod-n coefficients must be integers");
    return Rat(mod_euclid(boost::multiprecision::numerator(x), modulus));
}

}  // namespace

Cochain::Cochain(int k, Int n, RatVec vals)
    : degree(k), modulus(std::move(n)), values(std::move(vals)) {
    if (degree < 0 || degree > 3)
        throw bad_input_error("Cochain: degree must be in [0, 3]");
    if (modulus < 0)
        throw bad_input_error("Cochain: modulus must be 0 (for Q/Z) or >= 1");
    for (Rat& v : values) v = normalize_value(v, modulus);
}

Cochain Cochain::zero(const Nerve& nerve, int k, Int n) {
    return Cochain(k, std::move(n), RatVec(nerve.simplex_count(k), Rat(0)));
}

bool Cochain::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const Rat& v) { return v == 0; });
}

namespace {

void check_compatible(const Cochain& a, const Cochain& b) {
    if (a.degree != b.degree || a.modulus != b.modulus || a.values.size() != b.values.size())
        throw bad_input_error("Cochain: incompatible degree, modulus, or length");
}

}  // namespace

Cochain operator+(const Cochain& a, const Cochain& b) {
    check_compatible(a, b);
    RatVec vals(a.values.size());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = a.values[i] + b.values[i];
    return Cochain(a.degree, a.modulus, std::move(vals));
}

Cochain operator-(const Cochain& a, const Cochain& b) {
    check_compatible(a, b);
    RatVec vals(a.values.size());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = a.values[i] - b.values[i];
    return Cochain(a.degree, a.modulus, std::move(vals));
}

Cochain coboundary(const Nerve& nerve, const Cochain& c) {
    if (c.degree > 2)
        throw bad_input_error("coboundary: degree-3 cochains are top-dimensional here");
    if (c.values.size() != nerve.simplex_count(c.degree))
        throw bad_input_error("coboundary: cochain does not match the nerve");
    IntMatrix d = nerve.coboundary_matrix(c.degree);
    RatVec vals(d.rows(), Rat(0));
    for (size_t i = 0; i < d.rows(); ++i)
        for (size_t j = 0; j < d.cols(); ++j)
            if (d(i, j) != 0) vals[i] += Rat(d(i, j)) * c.values[j];
    return Cochain(c.degree + 1, c.modulus, std::move(vals));
}

FiniteAbelianGroup cech_cohomology(const Nerve& nerve, int degree, const Int& n) {
    if (degree < 0 || degree > 2)
        throw bad_input_error("cech_cohomology: degree must be in [0, 2]");
    if (n < 1)
        throw bad_input_error("cech_cohomology: modulus must be at least 1");

    const size_t c_k = nerve.simplex_count(degree);
    SmithNormalForm out_form = smith_normal_form(nerve.coboundary_matrix(degree));
    size_t rank_out = out_form.rank;
    IntVec factors_out = out_form.nonzero_diagonal();

    size_t rank_in = 0;
    IntVec factors_in;
    if (degree > 0) {
        SmithNormalForm in_form = smith_normal_form(nerve.coboundary_matrix(degree - 1));
        rank_in = in_form.rank;
        factors_in = in_form.nonzero_diagonal();
    }

    // free part of H^degree over Z, then universal coefficients for Z/n:
    // torsion of H^degree from the incoming differential, Tor-term from the
    // outgoing one
    const size_t betti = c_k - rank_out - rank_in;
    IntVec orders;
    for (size_t i = 0; i < betti; ++i) orders.push_back(n);
    for (const Int& d : factors_in) orders.push_back(boost::multiprecision::gcd(d, n));
    for (const Int& d : factors_out) orders.push_back(boost::multiprecision::gcd(d, n));
    return FiniteAbelianGroup::from_cyclic_orders(orders);
}

CohomologousResult is_cohomologous(const Nerve& nerve, const Cochain& a, const Cochain& b) {
    check_compatible(a, b);
    if (a.values.size() != nerve.simplex_count(a.degree))
        throw bad_input_error("is_cohomologous: cochains do not match the nerve");
    if (a.degree <= 2) {
        if (!coboundary(nerve, a).is_zero() || !coboundary(nerve, b).is_zero())
            throw bad_input_error("is_cohomologous: inputs must be cocycles");
    }
    Cochain diff = a - b;
    if (a.degree == 0) {
        return {diff.is_zero(), std::nullopt};
    }

    const int k = a.degree;
    IntMatrix d = nerve.coboundary_matrix(k - 1);
    const size_t nc = d.cols();

    if (a.modulus >= 1) {
        // integer solve of d * x = diff modulo n
        IntMatrix n_id = IntMatrix::identity(d.rows());
        for (size_t i = 0; i < d.rows(); ++i) n_id(i, i) = a.modulus;
        IntVec rhs(diff.values.size());
        for (size_t i = 0; i < rhs.size(); ++i)
            rhs[i] = boost::multiprecision::numerator(diff.values[i]);
        auto sol = solve_integer(hstack(d, n_id), rhs);
        if (!sol) return {false, std::nullopt};
        RatVec x(nc);
        for (size_t i = 0; i < nc; ++i) x[i] = Rat(mod_euclid((*sol)[i], a.modulus));
        return {true, Cochain(k - 1, a.modulus, std::move(x))};
    }

    // Q/Z coefficients: diagonalize d and solve componentwise modulo 1
    SmithNormalForm s = smith_normal_form(d);
    RatVec rhs(d.rows(), Rat(0));
    for (size_t i = 0; i < d.rows(); ++i)
        for (size_t j = 0; j < d.rows(); ++j)
            if (s.u(i, j) != 0) rhs[i] += Rat(s.u(i, j)) * diff.values[j];
    RatVec t(nc, Rat(0));
    for (size_t i = 0; i < d.rows(); ++i) {
        if (i < s.rank) {
            t[i] = rhs[i] / Rat(s.d(i, i));
        } else if (mod_one(rhs[i]) != 0) {
            return {false, std::nullopt};
        }
    }
    RatVec x(nc, Rat(0));
    for (size_t i = 0; i < nc; ++i)
        for (size_t j = 0; j < nc; ++j)
            if (s.v(i, j) != 0) x[i] += Rat(s.v(i, j)) * t[j];
    return {true, Cochain(k - 1, a.modulus, std::move(x))};
}

GluingData::GluingData(Nerve n, Cochain lambda, Cochain alpha)
    : nerve(std::move(n)), transitions(std::move(lambda)), twist(std::move(alpha)) {
    if (transitions.degree != 1 || twist.degree != 2)
        throw bad_input_error("GluingData: transitions must be degree 1, twist degree 2");
    if (transitions.modulus != twist.modulus)
        throw bad_input_error("GluingData: transitions and twist use different coefficients");
    if (transitions.values.size() != nerve.simplex_count(1) ||
        twist.values.size() != nerve.simplex_count(2))
        throw bad_input_error("GluingData: cochains do not match the nerve");
}

bool verify_gluing(const GluingData& g) {
    return coboundary(g.nerve, g.transitions) == g.twist;
}

GluingData tensor_gluing(const GluingData& a, const GluingData& b) {
    if (!(a.nerve == b.nerve))
        throw bad_input_error("tensor_gluing: different nerves");
    return GluingData(a.nerve, a.transitions + b.transitions, a.twist + b.twist);
}

GluingData hom_gluing(const GluingData& from, const GluingData& to) {
    if (!(from.nerve == to.nerve))
        throw bad_input_error("hom_gluing: different nerves");
    return GluingData(from.nerve, to.transitions - from.transitions, to.twist - from.twist);
}

}  // namespace k3moduli

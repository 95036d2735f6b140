#include "lllkit/subgroups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace lllkit::urs {

namespace {

std::vector<std::int32_t> default_generators(const FiniteGroup& g) {
    // smallest prefix-greedy generating set
    std::vector<std::int32_t> gens;
    std::vector<bool> reached(static_cast<std::size_t>(g.n), false);
    auto close = [&] {
        std::fill(reached.begin(), reached.end(), false);
        reached[static_cast<std::size_t>(g.identity)] = true;
        std::vector<std::int32_t> frontier{g.identity};
        while (!frontier.empty()) {
            std::vector<std::int32_t> next;
            for (std::int32_t x : frontier)
                for (std::int32_t s : gens) {
                    std::int32_t y = g.mul(x, s);
                    if (!reached[static_cast<std::size_t>(y)]) {
                        reached[static_cast<std::size_t>(y)] = true;
                        next.push_back(y);
                    }
                }
            frontier = std::move(next);
        }
        return std::count(reached.begin(), reached.end(), true) == g.n;
    };
    if (g.n == 1) return gens;
    for (std::int32_t x = 0; x < g.n; ++x) {
        if (x == g.identity) continue;
        if (reached[static_cast<std::size_t>(x)]) continue;
        gens.push_back(x);
        std::int32_t xi = g.inv(x);
        if (xi != x && std::find(gens.begin(), gens.end(), xi) == gens.end()) gens.push_back(xi);
        if (close()) break;
    }
    return gens;
}

} // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::int32_t>> mult, std::string name) {
    FiniteGroup g;
    g.name = std::move(name);
    g.n = static_cast<std::int32_t>(mult.size());
    if (g.n == 0) throw ValidationError("FiniteGroup: empty table");
    for (const auto& row : mult) {
        if (static_cast<std::int32_t>(row.size()) != g.n)
            throw ValidationError("FiniteGroup: table is not square");
        for (std::int32_t x : row)
            if (x < 0 || x >= g.n) throw ValidationError("FiniteGroup: entry out of range");
    }
    g.mult = std::move(mult);

    g.identity = -1;
    for (std::int32_t e = 0; e < g.n; ++e) {
        bool ok = true;
        for (std::int32_t x = 0; x < g.n && ok; ++x)
            ok = g.mul(e, x) == x && g.mul(x, e) == x;
        if (ok) { g.identity = e; break; }
    }
    if (g.identity < 0) throw ValidationError("FiniteGroup: no identity");

    g.inverse.assign(static_cast<std::size_t>(g.n), -1);
    for (std::int32_t a = 0; a < g.n; ++a) {
        for (std::int32_t b = 0; b < g.n; ++b)
            if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) { g.inverse[static_cast<std::size_t>(a)] = b; break; }
        if (g.inverse[static_cast<std::size_t>(a)] < 0)
            throw ValidationError("FiniteGroup: missing inverse");
    }
    for (std::int32_t a = 0; a < g.n; ++a)
        for (std::int32_t b = 0; b < g.n; ++b)
            for (std::int32_t c = 0; c < g.n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw ValidationError("FiniteGroup: multiplication not associative");

    g.generators = default_generators(g);
    return g;
}

FiniteGroup FiniteGroup::from_permutations(std::int32_t degree,
                                           const std::vector<std::vector<std::int32_t>>& gens,
                                           std::string name, std::int32_t order_cap) {
    for (const auto& p : gens) {
        if (static_cast<std::int32_t>(p.size()) != degree)
            throw ValidationError("from_permutations: wrong degree");
        std::vector<bool> seen(static_cast<std::size_t>(degree), false);
        for (std::int32_t x : p) {
            if (x < 0 || x >= degree || seen[static_cast<std::size_t>(x)])
                throw ValidationError("from_permutations: not a permutation");
            seen[static_cast<std::size_t>(x)] = true;
        }
    }
    std::vector<std::int32_t> id(static_cast<std::size_t>(degree));
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<std::int32_t>> elems{id};
    std::map<std::vector<std::int32_t>, std::int32_t> index{{id, 0}};
    auto compose = [degree](const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
        // right action: x.(ab) = (x.a).b
        std::vector<std::int32_t> r(static_cast<std::size_t>(degree));
        for (std::int32_t x = 0; x < degree; ++x)
            r[static_cast<std::size_t>(x)] = b[static_cast<std::size_t>(a[static_cast<std::size_t>(x)])];
        return r;
    };
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& s : gens) {
            auto next = compose(elems[i], s);
            if (!index.count(next)) {
                if (static_cast<std::int32_t>(elems.size()) >= order_cap)
                    throw CapExceededError("from_permutations: order cap exceeded");
                index[next] = static_cast<std::int32_t>(elems.size());
                elems.push_back(std::move(next));
            }
        }
    }
    const std::int32_t n = static_cast<std::int32_t>(elems.size());
    std::vector<std::vector<std::int32_t>> mult(static_cast<std::size_t>(n),
                                                std::vector<std::int32_t>(static_cast<std::size_t>(n)));
    for (std::int32_t a = 0; a < n; ++a)
        for (std::int32_t b = 0; b < n; ++b)
            mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                index.at(compose(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)]));
    FiniteGroup g = from_table(std::move(mult), std::move(name));
    g.generators.clear();
    for (const auto& s : gens) g.generators.push_back(index.at(s));
    return g;
}

FiniteGroup FiniteGroup::cyclic(std::int32_t m) {
    if (m < 1) throw ValidationError("cyclic: order must be >= 1");
    std::vector<std::vector<std::int32_t>> mult(static_cast<std::size_t>(m),
                                                std::vector<std::int32_t>(static_cast<std::size_t>(m)));
    for (std::int32_t a = 0; a < m; ++a)
        for (std::int32_t b = 0; b < m; ++b)
            mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % m;
    return from_table(std::move(mult), "c" + std::to_string(m));
}

FiniteGroup FiniteGroup::klein4() {
    // indices: e, a, b, ab with a^2 = b^2 = e
    std::vector<std::vector<std::int32_t>> mult{
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    return from_table(std::move(mult), "klein4");
}

FiniteGroup FiniteGroup::dihedral(std::int32_t m) {
    if (m < 3) throw ValidationError("dihedral: need m >= 3");
    // permutations of the m-gon: rotation and a reflection
    std::vector<std::int32_t> rot(static_cast<std::size_t>(m)), refl(static_cast<std::size_t>(m));
    for (std::int32_t i = 0; i < m; ++i) {
        rot[static_cast<std::size_t>(i)] = (i + 1) % m;
        refl[static_cast<std::size_t>(i)] = (m - i) % m;
    }
    return from_permutations(m, {rot, refl}, "d" + std::to_string(m));
}

FiniteGroup FiniteGroup::quaternion8() {
    // 1, -1, i, -i, j, -j, k, -k
    auto idx = [](int sign, int axis) { return 2 * axis + (sign > 0 ? 0 : 1); };
    std::vector<std::vector<std::int32_t>> mult(8, std::vector<std::int32_t>(8));
    // quaternion units: axis 0=1, 1=i, 2=j, 3=k
    static const int tbl_axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int tbl_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ax_a = a / 2, sg_a = a % 2 == 0 ? 1 : -1;
            int ax_b = b / 2, sg_b = b % 2 == 0 ? 1 : -1;
            int ax = tbl_axis[ax_a][ax_b];
            int sg = sg_a * sg_b * tbl_sign[ax_a][ax_b];
            mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = idx(sg, ax);
        }
    return from_table(std::move(mult), "q8");
}

FiniteGroup FiniteGroup::symmetric(std::int32_t m) {
    if (m < 1 || m > 5) throw ValidationError("symmetric: supported for 1 <= m <= 5");
    if (m == 1) return cyclic(1);
    std::vector<std::int32_t> transposition(static_cast<std::size_t>(m)), cycle(static_cast<std::size_t>(m));
    std::iota(transposition.begin(), transposition.end(), 0);
    std::swap(transposition[0], transposition[1]);
    for (std::int32_t i = 0; i < m; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % m;
    return from_permutations(m, {transposition, cycle}, "s" + std::to_string(m));
}

FiniteGroup FiniteGroup::alternating4() {
    // generated by (0 1 2) and (0 1)(2 3)
    std::vector<std::int32_t> three{1, 2, 0, 3};
    std::vector<std::int32_t> doubletrans{1, 0, 3, 2};
    return from_permutations(4, {three, doubletrans}, "a4");
}

FiniteGroup FiniteGroup::by_name(const std::string& name) {
    if (name.size() >= 2 && name[0] == 'c') return cyclic(static_cast<std::int32_t>(std::stol(name.substr(1))));
    if (name.size() >= 2 && name[0] == 'd') return dihedral(static_cast<std::int32_t>(std::stol(name.substr(1))));
    if (name == "klein4" || name == "v4") return klein4();
    if (name == "q8") return quaternion8();
    if (name == "s2") return symmetric(2);
    if (name == "s3") return symmetric(3);
    if (name == "s4") return symmetric(4);
    if (name == "s5") return symmetric(5);
    if (name == "a4") return alternating4();
    throw ValidationError("unknown builtin group: " + name);
}

bool Subgroup::contains(std::int32_t x) const {
    return std::binary_search(elems.begin(), elems.end(), x);
}

Subgroup Subgroup::whole(const FiniteGroup& g) {
    Subgroup s;
    s.elems.resize(static_cast<std::size_t>(g.n));
    std::iota(s.elems.begin(), s.elems.end(), 0);
    return s;
}

Subgroup Subgroup::closure(const FiniteGroup& g, std::vector<std::int32_t> seed) {
    std::set<std::int32_t> members{g.identity};
    for (std::int32_t x : seed) members.insert(x);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::int32_t> snapshot(members.begin(), members.end());
        for (std::int32_t a : snapshot) {
            if (members.insert(g.inv(a)).second) grew = true;
            for (std::int32_t b : snapshot)
                if (members.insert(g.mul(a, b)).second) grew = true;
        }
    }
    Subgroup s;
    s.elems.assign(members.begin(), members.end());
    return s;
}

bool Subgroup::is_subgroup_of(const FiniteGroup& g) const {
    if (elems.empty() || !contains(g.identity)) return false;
    for (std::int32_t a : elems) {
        if (!contains(g.inv(a))) return false;
        for (std::int32_t b : elems)
            if (!contains(g.mul(a, b))) return false;
    }
    return true;
}

Subgroup Subgroup::conjugate(const FiniteGroup& g, std::int32_t by) const {
    Subgroup s;
    s.elems.reserve(elems.size());
    for (std::int32_t x : elems) s.elems.push_back(g.conj(by, x));
    std::sort(s.elems.begin(), s.elems.end());
    return s;
}

FiniteGSystem FiniteGSystem::from_table(const FiniteGroup& g,
                                        std::vector<std::vector<std::int32_t>> act,
                                        std::vector<std::string> labels) {
    FiniteGSystem sys;
    if (static_cast<std::int32_t>(act.size()) != g.n)
        throw ValidationError("FiniteGSystem: action table must have one row per group element");
    sys.n_points = act.empty() ? 0 : act[0].size();
    for (const auto& row : act) {
        if (row.size() != sys.n_points) throw ValidationError("FiniteGSystem: ragged action table");
        for (std::int32_t x : row)
            if (x < 0 || static_cast<std::size_t>(x) >= sys.n_points)
                throw ValidationError("FiniteGSystem: action image out of range");
    }
    sys.act = std::move(act);
    sys.point_labels = std::move(labels);
    for (std::size_t x = 0; x < sys.n_points; ++x)
        if (sys.apply(g.identity, x) != x)
            throw ValidationError("FiniteGSystem: identity does not act trivially");
    for (std::int32_t a = 0; a < g.n; ++a)
        for (std::int32_t b = 0; b < g.n; ++b)
            for (std::size_t x = 0; x < sys.n_points; ++x)
                if (sys.apply(g.mul(a, b), x) != sys.apply(a, sys.apply(b, x)))
                    throw ValidationError("FiniteGSystem: action axiom (gh)x = g(hx) fails");
    return sys;
}

FiniteGSystem FiniteGSystem::regular(const FiniteGroup& g) {
    std::vector<std::vector<std::int32_t>> act(static_cast<std::size_t>(g.n),
                                               std::vector<std::int32_t>(static_cast<std::size_t>(g.n)));
    for (std::int32_t a = 0; a < g.n; ++a)
        for (std::int32_t x = 0; x < g.n; ++x)
            act[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] = g.mul(a, x);
    return from_table(g, std::move(act));
}

FiniteGSystem FiniteGSystem::trivial(const FiniteGroup& g, std::size_t points) {
    std::vector<std::vector<std::int32_t>> act(static_cast<std::size_t>(g.n),
                                               std::vector<std::int32_t>(points));
    for (auto& row : act) std::iota(row.begin(), row.end(), 0);
    return from_table(g, std::move(act));
}

bool FiniteGSystem::is_transitive(const FiniteGroup& g) const {
    if (n_points == 0) return false;
    std::set<std::size_t> orbit;
    for (std::int32_t a = 0; a < g.n; ++a) orbit.insert(apply(a, 0));
    return orbit.size() == n_points;
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g, std::int32_t order_cap) {
    if (g.n > order_cap)
        throw CapExceededError("enumerate_subgroups: group order " + std::to_string(g.n) +
                               " exceeds cap " + std::to_string(order_cap));
    std::set<Subgroup> found;
    found.insert(Subgroup::trivial(g));
    for (std::int32_t x = 0; x < g.n; ++x) found.insert(Subgroup::closure(g, {x}));

    // extend every known subgroup by one generator until nothing new appears
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Subgroup> snapshot(found.begin(), found.end());
        for (const auto& h : snapshot) {
            if (static_cast<std::int32_t>(h.order()) == g.n) continue;
            for (std::int32_t x = 0; x < g.n; ++x) {
                if (h.contains(x)) continue;
                std::vector<std::int32_t> seed = h.elems;
                seed.push_back(x);
                Subgroup bigger = Subgroup::closure(g, std::move(seed));
                if (found.insert(std::move(bigger)).second) grew = true;
            }
        }
    }
    std::vector<Subgroup> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elems < b.elems;
    });
    return out;
}

std::vector<std::vector<Subgroup>> conjugation_orbits(const std::vector<Subgroup>& subs,
                                                      const FiniteGroup& g) {
    std::vector<std::vector<Subgroup>> orbits;
    std::set<Subgroup> assigned;
    for (const auto& h : subs) {
        if (assigned.count(h)) continue;
        std::set<Subgroup> orbit;
        for (std::int32_t x = 0; x < g.n; ++x) orbit.insert(h.conjugate(g, x));
        for (const auto& k : orbit) assigned.insert(k);
        orbits.emplace_back(orbit.begin(), orbit.end());
    }
    return orbits;
}

std::vector<Subgroup> stabilizer_map(const FiniteGSystem& system, const FiniteGroup& g) {
    std::vector<Subgroup> out;
    out.reserve(system.n_points);
    for (std::size_t x = 0; x < system.n_points; ++x) {
        Subgroup s;
        for (std::int32_t a = 0; a < g.n; ++a)
            if (system.apply(a, x) == x) s.elems.push_back(a);
        if (!s.is_subgroup_of(g))
            throw ValidationError("stabilizer_map: stabilizer is not a subgroup");
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Subgroup> stability_system(const FiniteGSystem& system, const FiniteGroup& g) {
    std::vector<Subgroup> stabs = stabilizer_map(system, g);
    std::set<Subgroup> distinct(stabs.begin(), stabs.end());
    // conjugation covariance makes the image conjugation-invariant
    for (const auto& h : distinct)
        for (std::int32_t x = 0; x < g.n; ++x)
            if (!distinct.count(h.conjugate(g, x)))
                throw ValidationError("stability_system: image is not conjugation-invariant");
    return std::vector<Subgroup>(distinct.begin(), distinct.end());
}

bool is_essentially_free(const FiniteGSystem& system, const FiniteGroup& g) {
    std::vector<Subgroup> z = stability_system(system, g);
    return z.size() == 1 && z[0] == Subgroup::trivial(g);
}

StabilityReport check_proposition_stability(const FiniteGSystem& system, const FiniteGroup& g) {
    StabilityReport report;
    report.minimal_input = system.is_transitive(g);
    if (!report.minimal_input)
        throw ValidationError("check_proposition_stability: system is not minimal (transitive)");

    std::vector<Subgroup> stabs = stabilizer_map(system, g);
    // X~ = {(x, G_x)}; eta (x,K) -> x is one-to-one per point by construction
    report.xtilde_size = system.n_points;
    report.eta_bijective = true;

    // product action g.(x, K) = (gx, gKg^-1); single orbit check from (0, G_0)
    std::set<std::pair<std::size_t, Subgroup>> orbit;
    for (std::int32_t a = 0; a < g.n; ++a)
        orbit.emplace(system.apply(a, 0), stabs[0].conjugate(g, a));
    report.xtilde_single_orbit = orbit.size() == system.n_points;
    for (const auto& [x, k] : orbit)
        if (!(stabs[x] == k)) report.xtilde_single_orbit = false;

    std::set<Subgroup> z(stabs.begin(), stabs.end());
    report.z_size = z.size();
    std::set<Subgroup> z_orbit;
    for (std::int32_t a = 0; a < g.n; ++a) z_orbit.insert(stabs[0].conjugate(g, a));
    report.z_single_orbit = z_orbit == z;
    // {G_x : x in X} is already a single conjugation orbit at finite scale,
    // so Z is its unique minimal subset
    report.z_unique_minimal = report.z_single_orbit;
    return report;
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
    Subgroup n;
    for (std::int32_t x = 0; x < g.n; ++x)
        if (h.conjugate(g, x) == h) n.elems.push_back(x);
    return n;
}

} // namespace lllkit::urs

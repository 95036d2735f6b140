#ifndef LLLKIT_SUBGROUPS_HPP
#define LLLKIT_SUBGROUPS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lllkit/util.hpp"

namespace lllkit::urs {

// A finite group as a validated multiplication table. Loading checks the
// identity, inverse and associativity laws on the full table.
struct FiniteGroup {
    std::string name;
    std::int32_t n = 0;
    std::int32_t identity = 0;
    std::vector<std::vector<std::int32_t>> mult;
    std::vector<std::int32_t> inverse;
    std::vector<std::int32_t> generators;

    static FiniteGroup from_table(std::vector<std::vector<std::int32_t>> mult,
                                  std::string name = "table");
    // closes the generators under composition; cap guards the order
    static FiniteGroup from_permutations(std::int32_t degree,
                                         const std::vector<std::vector<std::int32_t>>& gens,
                                         std::string name, std::int32_t order_cap = 256);

    static FiniteGroup cyclic(std::int32_t m);
    static FiniteGroup klein4();
    static FiniteGroup dihedral(std::int32_t m);        // order 2m
    static FiniteGroup quaternion8();
    static FiniteGroup symmetric(std::int32_t m);       // m <= 5
    static FiniteGroup alternating4();
    static FiniteGroup by_name(const std::string& name); // "s3", "c6", "d4", ...

    std::int32_t mul(std::int32_t a, std::int32_t b) const {
        return mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    std::int32_t inv(std::int32_t a) const { return inverse[static_cast<std::size_t>(a)]; }
    std::int32_t conj(std::int32_t g, std::int32_t x) const {   // g x g^-1
        return mul(mul(g, x), inv(g));
    }
};

// Sorted element-index set, closed under product and inverse.
struct Subgroup {
    std::vector<std::int32_t> elems;

    auto operator<=>(const Subgroup&) const = default;
    std::size_t order() const { return elems.size(); }
    bool contains(std::int32_t x) const;
    bool is_trivial() const { return elems.size() == 1; }

    static Subgroup trivial(const FiniteGroup& g) { return Subgroup{{g.identity}}; }
    static Subgroup whole(const FiniteGroup& g);
    static Subgroup closure(const FiniteGroup& g, std::vector<std::int32_t> seed);
    bool is_subgroup_of(const FiniteGroup& g) const;
    Subgroup conjugate(const FiniteGroup& g, std::int32_t by) const;
};

// A finite G-set given by its full action table act[g][x]; the action axioms
// are checked at construction.
struct FiniteGSystem {
    std::size_t n_points = 0;
    std::vector<std::vector<std::int32_t>> act;   // [group element][point]
    std::vector<std::string> point_labels;        // optional

    static FiniteGSystem from_table(const FiniteGroup& g, std::vector<std::vector<std::int32_t>> act,
                                    std::vector<std::string> labels = {});
    static FiniteGSystem regular(const FiniteGroup& g);        // x -> gx
    static FiniteGSystem trivial(const FiniteGroup& g, std::size_t points);
    // natural action of a permutation-constructed group needs the original
    // permutations; provided by callers where relevant
    std::size_t apply(std::int32_t g, std::size_t x) const {
        return static_cast<std::size_t>(act[static_cast<std::size_t>(g)][x]);
    }
    bool is_transitive(const FiniteGroup& g) const;
};

inline constexpr std::int32_t kDefaultOrderCap = 256;

// Complete subgroup list, sorted by (order, element set). Bottom-up:
// cyclic subgroups, then one-generator extensions to a fixpoint.
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g,
                                          std::int32_t order_cap = kDefaultOrderCap);

// Conjugation orbits of the complete subgroup list. For finite G every orbit
// is closed and minimal: a URS at finite scale.
std::vector<std::vector<Subgroup>> conjugation_orbits(const std::vector<Subgroup>& subs,
                                                      const FiniteGroup& g);

// x -> G_x = {g : gx = x}; each stabilizer is verified to be a subgroup.
std::vector<Subgroup> stabilizer_map(const FiniteGSystem& system, const FiniteGroup& g);

// Z = {G_x : x in X} (set of distinct stabilizers; finite discrete scale
// needs no closure). Conjugation-invariance is asserted.
std::vector<Subgroup> stability_system(const FiniteGSystem& system, const FiniteGroup& g);

bool is_essentially_free(const FiniteGSystem& system, const FiniteGroup& g);

struct StabilityReport {
    bool minimal_input = false;
    bool eta_bijective = false;
    bool xtilde_single_orbit = false;
    bool z_single_orbit = false;
    bool z_unique_minimal = false;
    std::size_t xtilde_size = 0;
    std::size_t z_size = 0;

    bool all() const {
        return minimal_input && eta_bijective && xtilde_single_orbit && z_single_orbit && z_unique_minimal;
    }
};

// Finite-scale version of the stability-system facts for minimal systems:
// builds X~ = {(x, G_x)} with the product action and checks projections.
StabilityReport check_proposition_stability(const FiniteGSystem& system, const FiniteGroup& g);

// N_G(H)
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);

} // namespace lllkit::urs

#endif

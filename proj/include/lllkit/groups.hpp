#ifndef LLLKIT_GROUPS_HPP
#define LLLKIT_GROUPS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lllkit/util.hpp"

namespace lllkit::groups {

// Canonical form of a group element. Contents depend on the family:
//   Free:    freely reduced word, letters +t / -t for generator t in 1..rank
//   Abelian: integer coordinate vector of length rank
//   Perm:    image array of a permutation of [0, degree)
//   Table:   single element index
// Equality of canonical forms decides element equality; comparison is
// lexicographic on the data and orders elements within a BFS layer.
struct Elem {
    std::vector<std::int32_t> v;
    auto operator<=>(const Elem&) const = default;
};

// A finitely generated group presented operationally: canonical forms plus a
// fixed symmetric generator list S = {s_1, ..., s_d} with inverses paired.
class GroupFamily {
public:
    enum class Kind { Free, Abelian, Perm, Table };

    static GroupFamily free_group(int rank);
    static GroupFamily free_abelian(int rank);
    // gens: permutations of [0, degree); inverses are appended when missing.
    static GroupFamily permutation(std::vector<std::vector<std::int32_t>> gens);
    // mult: full Cayley table; gens: generating element indices (symmetric
    // closure is taken automatically). Identity/inverses are derived and the
    // table axioms are checked.
    static GroupFamily table(std::vector<std::vector<std::int32_t>> mult,
                             std::vector<std::int32_t> gens,
                             std::string name = "table");

    Kind kind() const { return kind_; }
    int rank() const { return rank_; }
    int degree() const { return degree_; }
    const std::string& name() const { return name_; }

    // symmetric generator list
    int num_generators() const { return static_cast<int>(gen_elems_.size()); }
    int inverse_generator(int s) const { return gen_inverse_[static_cast<std::size_t>(s)]; }
    const Elem& generator_elem(int s) const { return gen_elems_[static_cast<std::size_t>(s)]; }
    const std::string& generator_name(int s) const { return gen_names_[static_cast<std::size_t>(s)]; }

    Elem identity() const;
    bool is_identity(const Elem& g) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem apply(const Elem& g, int s) const { return mul(g, generator_elem(s)); }

    std::string to_string(const Elem& g) const;
    // Parses words like "a b A" (uppercase = inverse) for free/abelian
    // families, or "#k" element indices for table families.
    Elem parse(const std::string& word) const;

    // table-family access (throws for other kinds)
    int table_order() const;
    std::int32_t table_mult(std::int32_t a, std::int32_t b) const;
    std::int32_t table_inverse(std::int32_t a) const;
    std::int32_t table_identity() const;

private:
    GroupFamily() = default;
    void build_generator_names();

    Kind kind_ = Kind::Free;
    int rank_ = 0;     // Free/Abelian
    int degree_ = 0;   // Perm
    std::string name_;
    std::vector<Elem> gen_elems_;
    std::vector<int> gen_inverse_;
    std::vector<std::string> gen_names_;
    // Table data
    std::vector<std::vector<std::int32_t>> mult_;
    std::vector<std::int32_t> inverse_;
    std::int32_t identity_ = 0;
};

// Word-metric ball around the identity: elements in BFS layer order with ties
// broken lexicographically on canonical forms, plus the generator step table.
struct GroupPatch {
    std::shared_ptr<const GroupFamily> family;
    int radius = 0;
    std::vector<Elem> elements;                      // BFS order
    std::vector<std::int32_t> layer;                 // word length of each element
    std::vector<std::vector<std::int32_t>> step;     // [elem][gen] -> index or -1

    std::size_t size() const { return elements.size(); }
    std::optional<std::size_t> index_of(const Elem& g) const;

    // sorted (element, index) pairs for lookups
    std::vector<std::pair<Elem, std::size_t>> sorted_index;
};

inline constexpr std::size_t kDefaultBallCap = 1000000;

GroupPatch ball(std::shared_ptr<const GroupFamily> family, int radius,
                std::size_t element_cap = kDefaultBallCap);

// A symbol assignment over (part of) a patch. `defined` marks the valid
// window; freshly built configurations are total.
struct Configuration {
    std::shared_ptr<const GroupPatch> patch;
    std::int32_t alphabet = 2;
    std::vector<std::int32_t> values;   // one per patch element, in {0..alphabet-1}
    std::vector<std::uint8_t> defined;

    static Configuration total(std::shared_ptr<const GroupPatch> patch,
                               std::int32_t alphabet,
                               std::vector<std::int32_t> values);
    bool is_total() const;
    std::size_t window_size() const;
};

// (g.w)(h) = w(g^-1 h) on the window where g^-1 h stays inside the patch.
// Throws ValidationError when the valid window is empty.
Configuration shift(const Elem& g, const Configuration& w);

// A finite G-set with the ability to act by arbitrary elements.
struct GroupAction {
    std::shared_ptr<const GroupFamily> family;
    std::size_t n_points = 0;
    std::function<std::size_t(std::size_t, const Elem&)> act;

    std::size_t act_gen(std::size_t p, int s) const {
        return act(p, family->generator_elem(s));
    }
};

// Action of a free or free-abelian family given by images of the base
// generators (permutations of [0, n)).
GroupAction action_from_images(std::shared_ptr<const GroupFamily> family,
                               std::vector<std::vector<std::int32_t>> images);
// Right multiplication of a table group on itself.
GroupAction regular_action(std::shared_ptr<const GroupFamily> table_family);
// Right multiplication on right cosets H\G of a table group; point 0 is H.
// subgroup: sorted element indices forming a subgroup (checked).
GroupAction coset_action(std::shared_ptr<const GroupFamily> table_family,
                         const std::vector<std::int32_t>& subgroup);
// Action of a permutation family on its natural points.
GroupAction natural_action(std::shared_ptr<const GroupFamily> perm_family);

// Orbit graph of a transitive action: vertex 0 is the basepoint, edges follow
// the generator list, labels s and s^-1 are mutually inverse.
struct SchreierGraph {
    std::shared_ptr<const GroupAction> action;
    std::vector<std::size_t> points;                 // action point ids, BFS order
    std::vector<std::vector<std::int32_t>> step;     // [vertex][gen] -> vertex
    std::size_t root = 0;

    std::size_t num_vertices() const { return points.size(); }
    int num_generators() const { return action->family->num_generators(); }
};

SchreierGraph schreier_graph(std::shared_ptr<const GroupAction> action,
                             std::size_t basepoint);

} // namespace lllkit::groups

#endif

#include "lllkit/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace lllkit::groups {

GroupFamily GroupFamily::free_group(int rank) {
    if (rank < 1) throw ValidationError("free_group: rank must be >= 1");
    GroupFamily f;
    f.kind_ = Kind::Free;
    f.rank_ = rank;
    f.name_ = "free:" + std::to_string(rank);
    for (int t = 1; t <= rank; ++t) {
        f.gen_elems_.push_back(Elem{{t}});
        f.gen_elems_.push_back(Elem{{-t}});
        f.gen_inverse_.push_back(2 * (t - 1) + 1);
        f.gen_inverse_.push_back(2 * (t - 1));
    }
    f.build_generator_names();
    return f;
}

GroupFamily GroupFamily::free_abelian(int rank) {
    if (rank < 1) throw ValidationError("free_abelian: rank must be >= 1");
    GroupFamily f;
    f.kind_ = Kind::Abelian;
    f.rank_ = rank;
    f.name_ = "abelian:" + std::to_string(rank);
    for (int t = 0; t < rank; ++t) {
        Elem plus, minus;
        plus.v.assign(static_cast<std::size_t>(rank), 0);
        minus.v.assign(static_cast<std::size_t>(rank), 0);
        plus.v[static_cast<std::size_t>(t)] = 1;
        minus.v[static_cast<std::size_t>(t)] = -1;
        f.gen_elems_.push_back(plus);
        f.gen_elems_.push_back(minus);
        f.gen_inverse_.push_back(2 * t + 1);
        f.gen_inverse_.push_back(2 * t);
    }
    f.build_generator_names();
    return f;
}

namespace {

bool is_permutation(const std::vector<std::int32_t>& p) {
    std::vector<bool> seen(p.size(), false);
    for (std::int32_t x : p) {
        if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[static_cast<std::size_t>(x)])
            return false;
        seen[static_cast<std::size_t>(x)] = true;
    }
    return true;
}

std::vector<std::int32_t> invert_permutation(const std::vector<std::int32_t>& p) {
    std::vector<std::int32_t> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<std::int32_t>(i);
    return r;
}

} // namespace

GroupFamily GroupFamily::permutation(std::vector<std::vector<std::int32_t>> gens) {
    if (gens.empty()) throw ValidationError("permutation: need at least one generator");
    const std::size_t degree = gens[0].size();
    GroupFamily f;
    f.kind_ = Kind::Perm;
    f.degree_ = static_cast<int>(degree);
    f.name_ = "perm:" + std::to_string(degree);
    std::vector<Elem> elems;
    for (auto& g : gens) {
        if (g.size() != degree || !is_permutation(g))
            throw ValidationError("permutation: generator is not a permutation of the stated degree");
        Elem e{std::move(g)};
        std::vector<std::int32_t> idv(degree);
        std::iota(idv.begin(), idv.end(), 0);
        if (e.v == idv) throw ValidationError("permutation: identity is not a valid generator");
        if (std::find(elems.begin(), elems.end(), e) == elems.end()) elems.push_back(std::move(e));
    }
    // append missing inverses, then pair
    const std::size_t base = elems.size();
    for (std::size_t i = 0; i < base; ++i) {
        Elem inv{invert_permutation(elems[i].v)};
        if (std::find(elems.begin(), elems.end(), inv) == elems.end()) elems.push_back(std::move(inv));
    }
    f.gen_elems_ = std::move(elems);
    f.gen_inverse_.assign(f.gen_elems_.size(), -1);
    for (std::size_t i = 0; i < f.gen_elems_.size(); ++i) {
        Elem inv{invert_permutation(f.gen_elems_[i].v)};
        auto it = std::find(f.gen_elems_.begin(), f.gen_elems_.end(), inv);
        f.gen_inverse_[i] = static_cast<int>(it - f.gen_elems_.begin());
    }
    f.build_generator_names();
    return f;
}

GroupFamily GroupFamily::table(std::vector<std::vector<std::int32_t>> mult,
                               std::vector<std::int32_t> gens,
                               std::string name) {
    const std::size_t n = mult.size();
    if (n == 0) throw ValidationError("table: empty multiplication table");
    for (const auto& row : mult)
        for (std::int32_t x : row)
            if (row.size() != n || x < 0 || static_cast<std::size_t>(x) >= n)
                throw ValidationError("table: malformed multiplication table");
    // identity
    std::int32_t id = -1;
    for (std::size_t e = 0; e < n; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            ok = mult[e][x] == static_cast<std::int32_t>(x) && mult[x][e] == static_cast<std::int32_t>(x);
        if (ok) { id = static_cast<std::int32_t>(e); break; }
    }
    if (id < 0) throw ValidationError("table: no identity element");
    // inverses
    std::vector<std::int32_t> inverse(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            if (mult[a][b] == id && mult[b][a] == id) { inverse[a] = static_cast<std::int32_t>(b); break; }
        if (inverse[a] < 0) throw ValidationError("table: element without inverse");
    }
    // associativity (full check; caps keep this at dozens of elements)
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (mult[static_cast<std::size_t>(mult[a][b])][c] != mult[a][static_cast<std::size_t>(mult[b][c])])
                    throw ValidationError("table: multiplication is not associative");

    GroupFamily f;
    f.kind_ = Kind::Table;
    f.name_ = std::move(name);
    f.mult_ = std::move(mult);
    f.inverse_ = std::move(inverse);
    f.identity_ = id;

    // symmetric closure of the generating set, identity dropped
    std::vector<std::int32_t> symmetric;
    for (std::int32_t g : gens) {
        if (g < 0 || static_cast<std::size_t>(g) >= n) throw ValidationError("table: generator index out of range");
        if (g == id) continue;
        if (std::find(symmetric.begin(), symmetric.end(), g) == symmetric.end()) symmetric.push_back(g);
        std::int32_t gi = f.inverse_[static_cast<std::size_t>(g)];
        if (gi != id && std::find(symmetric.begin(), symmetric.end(), gi) == symmetric.end()) symmetric.push_back(gi);
    }
    if (symmetric.empty() && n > 1) throw ValidationError("table: generating set is empty");
    // confirm the set generates
    std::vector<bool> reached(n, false);
    reached[static_cast<std::size_t>(id)] = true;
    std::vector<std::int32_t> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::int32_t> next;
        for (std::int32_t x : frontier)
            for (std::int32_t g : symmetric) {
                std::int32_t y = f.mult_[static_cast<std::size_t>(x)][static_cast<std::size_t>(g)];
                if (!reached[static_cast<std::size_t>(y)]) { reached[static_cast<std::size_t>(y)] = true; next.push_back(y); }
            }
        frontier = std::move(next);
    }
    if (std::find(reached.begin(), reached.end(), false) != reached.end())
        throw ValidationError("table: generators do not generate the group");

    for (std::int32_t g : symmetric) {
        f.gen_elems_.push_back(Elem{{g}});
    }
    f.gen_inverse_.assign(f.gen_elems_.size(), -1);
    for (std::size_t i = 0; i < f.gen_elems_.size(); ++i) {
        std::int32_t gi = f.inverse_[static_cast<std::size_t>(f.gen_elems_[i].v[0])];
        for (std::size_t j = 0; j < f.gen_elems_.size(); ++j)
            if (f.gen_elems_[j].v[0] == gi) { f.gen_inverse_[i] = static_cast<int>(j); break; }
    }
    f.build_generator_names();
    return f;
}

void GroupFamily::build_generator_names() {
    gen_names_.clear();
    gen_names_.reserve(gen_elems_.size());
    if (kind_ == Kind::Free || kind_ == Kind::Abelian) {
        for (std::size_t i = 0; i < gen_elems_.size(); ++i) {
            char base = static_cast<char>('a' + static_cast<int>(i / 2));
            bool inverse_letter = (i % 2) == 1;
            gen_names_.push_back(std::string(1, inverse_letter ? static_cast<char>(base - 'a' + 'A') : base));
        }
        return;
    }
    for (std::size_t i = 0; i < gen_elems_.size(); ++i) {
        if (kind_ == Kind::Table) {
            gen_names_.push_back("g" + std::to_string(gen_elems_[i].v[0]));
        } else {
            gen_names_.push_back("s" + std::to_string(i));
        }
    }
}

Elem GroupFamily::identity() const {
    switch (kind_) {
        case Kind::Free: return Elem{};
        case Kind::Abelian: return Elem{std::vector<std::int32_t>(static_cast<std::size_t>(rank_), 0)};
        case Kind::Perm: {
            std::vector<std::int32_t> v(static_cast<std::size_t>(degree_));
            std::iota(v.begin(), v.end(), 0);
            return Elem{std::move(v)};
        }
        case Kind::Table: return Elem{{identity_}};
    }
    throw ValidationError("identity: unknown family kind");
}

bool GroupFamily::is_identity(const Elem& g) const { return g == identity(); }

Elem GroupFamily::mul(const Elem& a, const Elem& b) const {
    switch (kind_) {
        case Kind::Free: {
            Elem r = a;
            for (std::int32_t letter : b.v) {
                if (!r.v.empty() && r.v.back() == -letter) r.v.pop_back();
                else r.v.push_back(letter);
            }
            return r;
        }
        case Kind::Abelian: {
            Elem r = a;
            for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
            return r;
        }
        case Kind::Perm: {
            // right action composition: x.(ab) = (x.a).b
            Elem r;
            r.v.resize(a.v.size());
            for (std::size_t i = 0; i < a.v.size(); ++i) r.v[i] = b.v[static_cast<std::size_t>(a.v[i])];
            return r;
        }
        case Kind::Table:
            return Elem{{mult_[static_cast<std::size_t>(a.v[0])][static_cast<std::size_t>(b.v[0])]}};
    }
    throw ValidationError("mul: unknown family kind");
}

Elem GroupFamily::inv(const Elem& a) const {
    switch (kind_) {
        case Kind::Free: {
            Elem r;
            r.v.reserve(a.v.size());
            for (auto it = a.v.rbegin(); it != a.v.rend(); ++it) r.v.push_back(-*it);
            return r;
        }
        case Kind::Abelian: {
            Elem r = a;
            for (auto& x : r.v) x = -x;
            return r;
        }
        case Kind::Perm: return Elem{invert_permutation(a.v)};
        case Kind::Table: return Elem{{inverse_[static_cast<std::size_t>(a.v[0])]}};
    }
    throw ValidationError("inv: unknown family kind");
}

std::string GroupFamily::to_string(const Elem& g) const {
    switch (kind_) {
        case Kind::Free: {
            if (g.v.empty()) return "e";
            std::string s;
            for (std::int32_t letter : g.v) {
                char base = static_cast<char>('a' + std::abs(letter) - 1);
                s += letter > 0 ? base : static_cast<char>(base - 'a' + 'A');
            }
            return s;
        }
        case Kind::Abelian: {
            std::ostringstream os;
            os << "(";
            for (std::size_t i = 0; i < g.v.size(); ++i) os << (i ? "," : "") << g.v[i];
            os << ")";
            return os.str();
        }
        case Kind::Perm: {
            std::ostringstream os;
            os << "[";
            for (std::size_t i = 0; i < g.v.size(); ++i) os << (i ? " " : "") << g.v[i];
            os << "]";
            return os.str();
        }
        case Kind::Table: return "#" + std::to_string(g.v[0]);
    }
    return "?";
}

Elem GroupFamily::parse(const std::string& word) const {
    if (kind_ == Kind::Table) {
        if (word.empty() || word[0] != '#')
            throw ValidationError("parse: table elements are written #<index>");
        std::int32_t idx = static_cast<std::int32_t>(std::stol(word.substr(1)));
        if (idx < 0 || static_cast<std::size_t>(idx) >= mult_.size())
            throw ValidationError("parse: element index out of range");
        return Elem{{idx}};
    }
    if (kind_ == Kind::Perm)
        throw ValidationError("parse: permutation elements are not parseable from words");
    Elem r = identity();
    for (char c : word) {
        if (c == ' ' || c == '*') continue;
        int letter;
        if (c >= 'a' && c <= 'z') letter = c - 'a' + 1;
        else if (c >= 'A' && c <= 'Z') letter = -(c - 'A' + 1);
        else if (c == 'e') continue;
        else throw ValidationError(std::string("parse: unexpected character '") + c + "'");
        if (std::abs(letter) > rank_) throw ValidationError("parse: letter outside the generator range");
        Elem lelem = kind_ == Kind::Free
                         ? Elem{{letter}}
                         : [&] {
                               Elem x{std::vector<std::int32_t>(static_cast<std::size_t>(rank_), 0)};
                               x.v[static_cast<std::size_t>(std::abs(letter) - 1)] = letter > 0 ? 1 : -1;
                               return x;
                           }();
        r = mul(r, lelem);
    }
    return r;
}

int GroupFamily::table_order() const {
    if (kind_ != Kind::Table) throw ValidationError("table_order: not a table family");
    return static_cast<int>(mult_.size());
}
std::int32_t GroupFamily::table_mult(std::int32_t a, std::int32_t b) const {
    return mult_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}
std::int32_t GroupFamily::table_inverse(std::int32_t a) const {
    return inverse_[static_cast<std::size_t>(a)];
}
std::int32_t GroupFamily::table_identity() const { return identity_; }

std::optional<std::size_t> GroupPatch::index_of(const Elem& g) const {
    auto it = std::lower_bound(sorted_index.begin(), sorted_index.end(), g,
                               [](const auto& p, const Elem& e) { return p.first < e; });
    if (it == sorted_index.end() || it->first != g) return std::nullopt;
    return it->second;
}

GroupPatch ball(std::shared_ptr<const GroupFamily> family, int radius, std::size_t element_cap) {
    if (radius < 0) throw ValidationError("ball: radius must be >= 0");
    GroupPatch patch;
    patch.family = family;
    patch.radius = radius;

    std::map<Elem, std::size_t> known;
    std::vector<Elem> layer_now{family->identity()};
    known.emplace(layer_now[0], 0);
    patch.elements.push_back(layer_now[0]);
    patch.layer.push_back(0);

    const int d = family->num_generators();
    for (int rho = 1; rho <= radius; ++rho) {
        std::vector<Elem> next;
        for (const Elem& g : layer_now)
            for (int s = 0; s < d; ++s) {
                Elem h = family->apply(g, s);
                if (known.find(h) == known.end()) {
                    known.emplace(h, 0);
                    next.push_back(std::move(h));
                }
            }
        std::sort(next.begin(), next.end());
        for (Elem& h : next) {
            if (patch.elements.size() >= element_cap)
                throw CapExceededError("ball: element cap " + std::to_string(element_cap) + " exceeded at radius " + std::to_string(rho));
            known[h] = patch.elements.size();
            patch.elements.push_back(h);
            patch.layer.push_back(rho);
        }
        layer_now = std::move(next);
        if (layer_now.empty()) break; // finite group exhausted
    }
    // re-number: `known` holds final indices for all but the first layer; fix identity
    known[patch.elements[0]] = 0;

    patch.step.assign(patch.elements.size(), std::vector<std::int32_t>(static_cast<std::size_t>(d), -1));
    for (std::size_t i = 0; i < patch.elements.size(); ++i)
        for (int s = 0; s < d; ++s) {
            Elem h = family->apply(patch.elements[i], s);
            auto it = known.find(h);
            patch.step[i][static_cast<std::size_t>(s)] = it == known.end() ? -1 : static_cast<std::int32_t>(it->second);
        }

    patch.sorted_index.reserve(patch.elements.size());
    for (std::size_t i = 0; i < patch.elements.size(); ++i) patch.sorted_index.emplace_back(patch.elements[i], i);
    std::sort(patch.sorted_index.begin(), patch.sorted_index.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return patch;
}

Configuration Configuration::total(std::shared_ptr<const GroupPatch> patch,
                                   std::int32_t alphabet,
                                   std::vector<std::int32_t> values) {
    if (values.size() != patch->size())
        throw ValidationError("Configuration: value count does not match the patch");
    for (std::int32_t v : values)
        if (v < 0 || v >= alphabet) throw ValidationError("Configuration: value outside the alphabet");
    Configuration c;
    c.patch = std::move(patch);
    c.alphabet = alphabet;
    c.values = std::move(values);
    c.defined.assign(c.values.size(), 1);
    return c;
}

bool Configuration::is_total() const {
    return std::find(defined.begin(), defined.end(), 0) == defined.end();
}

std::size_t Configuration::window_size() const {
    return static_cast<std::size_t>(std::count(defined.begin(), defined.end(), 1));
}

Configuration shift(const Elem& g, const Configuration& w) {
    const auto& family = *w.patch->family;
    Elem ginv = family.inv(g);
    Configuration out;
    out.patch = w.patch;
    out.alphabet = w.alphabet;
    out.values.assign(w.patch->size(), 0);
    out.defined.assign(w.patch->size(), 0);
    std::size_t count = 0;
    for (std::size_t h = 0; h < w.patch->size(); ++h) {
        Elem pre = family.mul(ginv, w.patch->elements[h]);
        auto idx = w.patch->index_of(pre);
        if (idx && w.defined[*idx]) {
            out.values[h] = w.values[*idx];
            out.defined[h] = 1;
            ++count;
        }
    }
    if (count == 0)
        throw ValidationError("shift: empty valid window for g = " + family.to_string(g));
    return out;
}

GroupAction action_from_images(std::shared_ptr<const GroupFamily> family,
                               std::vector<std::vector<std::int32_t>> images) {
    if (family->kind() != GroupFamily::Kind::Free && family->kind() != GroupFamily::Kind::Abelian)
        throw ValidationError("action_from_images: family must be free or free-abelian");
    if (static_cast<int>(images.size()) != family->rank())
        throw ValidationError("action_from_images: need one image per base generator");
    const std::size_t n = images.empty() ? 0 : images[0].size();
    std::vector<std::vector<std::int32_t>> inverses;
    for (const auto& img : images) {
        if (img.size() != n || !is_permutation(img))
            throw ValidationError("action_from_images: image is not a permutation");
        inverses.push_back(invert_permutation(img));
    }
    GroupAction a;
    a.family = family;
    a.n_points = n;
    a.act = [family, images = std::move(images), inverses = std::move(inverses)](std::size_t p, const Elem& g) {
        std::size_t x = p;
        if (family->kind() == GroupFamily::Kind::Free) {
            for (std::int32_t letter : g.v) {
                const auto& perm = letter > 0 ? images[static_cast<std::size_t>(letter - 1)]
                                              : inverses[static_cast<std::size_t>(-letter - 1)];
                x = static_cast<std::size_t>(perm[x]);
            }
        } else {
            for (std::size_t t = 0; t < g.v.size(); ++t) {
                std::int32_t c = g.v[t];
                const auto& perm = c > 0 ? images[t] : inverses[t];
                for (std::int32_t k = 0; k < std::abs(c); ++k) x = static_cast<std::size_t>(perm[x]);
            }
        }
        return x;
    };
    return a;
}

GroupAction regular_action(std::shared_ptr<const GroupFamily> table_family) {
    if (table_family->kind() != GroupFamily::Kind::Table)
        throw ValidationError("regular_action: family must be table-backed");
    GroupAction a;
    a.family = table_family;
    a.n_points = static_cast<std::size_t>(table_family->table_order());
    a.act = [f = table_family](std::size_t p, const Elem& g) {
        return static_cast<std::size_t>(f->table_mult(static_cast<std::int32_t>(p), g.v[0]));
    };
    return a;
}

GroupAction coset_action(std::shared_ptr<const GroupFamily> table_family,
                         const std::vector<std::int32_t>& subgroup) {
    if (table_family->kind() != GroupFamily::Kind::Table)
        throw ValidationError("coset_action: family must be table-backed");
    const int n = table_family->table_order();
    std::vector<bool> in_sub(static_cast<std::size_t>(n), false);
    for (std::int32_t h : subgroup) {
        if (h < 0 || h >= n) throw ValidationError("coset_action: subgroup element out of range");
        in_sub[static_cast<std::size_t>(h)] = true;
    }
    if (!in_sub[static_cast<std::size_t>(table_family->table_identity())])
        throw ValidationError("coset_action: subgroup must contain the identity");
    for (std::int32_t x : subgroup)
        for (std::int32_t y : subgroup)
            if (!in_sub[static_cast<std::size_t>(table_family->table_mult(x, y))])
                throw ValidationError("coset_action: set is not closed under multiplication");

    // right cosets Ha; coset of x = index of its smallest member
    std::vector<std::int32_t> coset_of(static_cast<std::size_t>(n), -1);
    std::vector<std::int32_t> reps;
    for (std::int32_t x = 0; x < n; ++x) {
        if (coset_of[static_cast<std::size_t>(x)] >= 0) continue;
        std::int32_t c = static_cast<std::int32_t>(reps.size());
        reps.push_back(x);
        for (std::int32_t h : subgroup)
            coset_of[static_cast<std::size_t>(table_family->table_mult(h, x))] = c;
    }
    GroupAction a;
    a.family = table_family;
    a.n_points = reps.size();
    a.act = [f = table_family, coset_of = std::move(coset_of), reps = std::move(reps)](std::size_t p, const Elem& g) {
        return static_cast<std::size_t>(coset_of[static_cast<std::size_t>(f->table_mult(reps[p], g.v[0]))]);
    };
    return a;
}

GroupAction natural_action(std::shared_ptr<const GroupFamily> perm_family) {
    if (perm_family->kind() != GroupFamily::Kind::Perm)
        throw ValidationError("natural_action: family must be permutation-backed");
    GroupAction a;
    a.family = perm_family;
    a.n_points = static_cast<std::size_t>(perm_family->degree());
    a.act = [](std::size_t p, const Elem& g) { return static_cast<std::size_t>(g.v[p]); };
    return a;
}

SchreierGraph schreier_graph(std::shared_ptr<const GroupAction> action, std::size_t basepoint) {
    if (basepoint >= action->n_points)
        throw ValidationError("schreier_graph: basepoint out of range");
    const int d = action->family->num_generators();
    SchreierGraph g;
    g.action = action;
    g.root = 0;

    std::vector<std::int32_t> vertex_of(action->n_points, -1);
    g.points.push_back(basepoint);
    vertex_of[basepoint] = 0;
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        for (int s = 0; s < d; ++s) {
            std::size_t q = action->act_gen(g.points[i], s);
            if (vertex_of[q] < 0) {
                vertex_of[q] = static_cast<std::int32_t>(g.points.size());
                g.points.push_back(q);
            }
        }
    }
    if (g.points.size() != action->n_points) {
        std::size_t missing = 0;
        while (missing < action->n_points && vertex_of[missing] >= 0) ++missing;
        throw ValidationError("schreier_graph: action is not transitive (point " +
                              std::to_string(missing) + " unreachable from point " +
                              std::to_string(basepoint) + ")");
    }
    g.step.assign(g.points.size(), std::vector<std::int32_t>(static_cast<std::size_t>(d), -1));
    for (std::size_t v = 0; v < g.points.size(); ++v)
        for (int s = 0; s < d; ++s)
            g.step[v][static_cast<std::size_t>(s)] = vertex_of[action->act_gen(g.points[v], s)];
    // edge labels s and s^-1 must be mutually inverse
    for (std::size_t v = 0; v < g.points.size(); ++v)
        for (int s = 0; s < d; ++s) {
            std::size_t w = static_cast<std::size_t>(g.step[v][static_cast<std::size_t>(s)]);
            if (g.step[w][static_cast<std::size_t>(action->family->inverse_generator(s))] != static_cast<std::int32_t>(v))
                throw ValidationError("schreier_graph: generator action is not inverse-consistent");
        }
    return g;
}

} // namespace lllkit::groups

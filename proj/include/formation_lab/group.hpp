#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formation_lab/error.hpp"
#include "formation_lab/perm.hpp"

namespace formation_lab {

/// Index of an element in its group's element table; 0 is the identity.
using Elem = std::uint32_t;
inline constexpr Elem kNoElem = std::numeric_limits<Elem>::max();

/// A finite group held as a flattened multiplication table.
///
/// Elements are numbered breadth-first from the identity along the
/// generators, so every derived object (series, reports) is reproducible.
/// Permutation-built groups keep the permutation of every element as well.
/// Instances are immutable; the lazily computed conjugacy classes and
/// element orders are guarded by `std::call_once`.
class FiniteGroup {
 public:
  FiniteGroup(std::string name, std::size_t order, std::vector<std::uint16_t> table,
              std::vector<Elem> generators, std::vector<Permutation> perms = {})
      : name_(std::move(name)),
        n_(order),
        table_(std::move(table)),
        generators_(std::move(generators)),
        perms_(std::move(perms)) {
    inv_.assign(n_, 0);
    for (std::size_t x = 0; x < n_; ++x) {
      const std::uint16_t* row = &table_[x * n_];
      for (std::size_t y = 0; y < n_; ++y) {
        if (row[y] == 0) {
          inv_[x] = static_cast<std::uint16_t>(y);
          break;
        }
      }
    }
  }

  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;

  const std::string& name() const { return name_; }
  std::size_t order() const { return n_; }
  bool is_trivial() const { return n_ == 1; }

  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// g^-1 x g
  Elem conj(Elem x, Elem g) const { return mul(mul(inv(g), x), g); }
  /// a^-1 b^-1 a b
  Elem comm(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  Elem power(Elem x, std::uint64_t k) const {
    Elem r = 0;
    Elem b = x;
    while (k) {
      if (k & 1u) r = mul(r, b);
      b = mul(b, b);
      k >>= 1u;
    }
    return r;
  }

  const std::vector<Elem>& generators() const { return generators_; }

  bool has_permutations() const { return !perms_.empty(); }
  std::size_t degree() const { return perms_.empty() ? 0 : perms_.front().degree(); }
  const Permutation& permutation(Elem x) const { return perms_.at(x); }

  /// Conjugacy classes ordered by smallest member; each class sorted.
  const std::vector<std::vector<Elem>>& conjugacy_classes() const {
    std::call_once(classes_once_, [this] { compute_classes(); });
    return classes_;
  }
  std::uint32_t class_index(Elem x) const {
    conjugacy_classes();
    return class_of_[x];
  }

  const std::vector<std::uint32_t>& element_orders() const {
    std::call_once(orders_once_, [this] { compute_orders(); });
    return orders_;
  }
  std::uint32_t element_order(Elem x) const { return element_orders()[x]; }

  std::uint64_t exponent() const {
    std::uint64_t e = 1;
    for (auto o : element_orders()) e = std::lcm(e, static_cast<std::uint64_t>(o));
    return e;
  }

  bool is_abelian() const {
    for (Elem a : generators_) {
      for (Elem b : generators_) {
        if (mul(a, b) != mul(b, a)) return false;
      }
    }
    return true;
  }

  std::span<const std::uint16_t> table() const { return table_; }

 private:
  void compute_classes() const {
    class_of_.assign(n_, std::numeric_limits<std::uint32_t>::max());
    for (Elem x = 0; x < n_; ++x) {
      if (class_of_[x] != std::numeric_limits<std::uint32_t>::max()) continue;
      const auto idx = static_cast<std::uint32_t>(classes_.size());
      std::vector<Elem> cls{x};
      class_of_[x] = idx;
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (Elem g : generators_) {
          const Elem y = conj(cls[i], g);
          if (class_of_[y] != idx) {
            class_of_[y] = idx;
            cls.push_back(y);
          }
        }
      }
      std::sort(cls.begin(), cls.end());
      classes_.push_back(std::move(cls));
    }
  }

  void compute_orders() const {
    orders_.assign(n_, 0);
    for (Elem x = 0; x < n_; ++x) {
      if (orders_[x]) continue;
      std::uint32_t k = 1;
      for (Elem y = x; y != 0; y = mul(y, x)) ++k;
      if (x == 0) k = 1;
      orders_[x] = k;
    }
  }

  std::string name_;
  std::size_t n_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> inv_;
  std::vector<Elem> generators_;
  std::vector<Permutation> perms_;

  mutable std::once_flag classes_once_;
  mutable std::vector<std::vector<Elem>> classes_;
  mutable std::vector<std::uint32_t> class_of_;
  mutable std::once_flag orders_once_;
  mutable std::vector<std::uint32_t> orders_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

namespace detail {

template <class T>
struct Closure {
  std::vector<T> elements;
  std::vector<std::uint16_t> table;
  std::vector<Elem> generator_ids;
};

/// Breadth-first closure of `gens` under `mul`, followed by the full
/// multiplication table. Row x of the table is filled along the BFS tree:
/// if y = parent(y) * gen then x*y = (x*parent(y)) * gen.
template <class T, class Hash = std::hash<T>, class Mul>
Closure<T> close(const T& identity, const std::vector<T>& gens, Mul&& mul, std::size_t cap) {
  const std::size_t hard_cap = std::min<std::size_t>(cap, 65536);
  Closure<T> out;
  std::unordered_map<T, Elem, Hash> index;
  std::vector<Elem> parent{0};
  std::vector<std::uint32_t> via{0};
  std::vector<Elem> right;
  const std::size_t ng = gens.size();
  out.elements.push_back(identity);
  index.emplace(identity, 0);
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    for (std::size_t g = 0; g < ng; ++g) {
      T y = mul(out.elements[i], gens[g]);
      auto [it, inserted] = index.try_emplace(std::move(y), static_cast<Elem>(out.elements.size()));
      if (inserted) {
        if (out.elements.size() + 1 > hard_cap) {
          throw Error(ErrorKind::ClosureTooLarge,
                      "closure exceeds the configured maximum of " + std::to_string(hard_cap));
        }
        out.elements.push_back(it->first);
        parent.push_back(static_cast<Elem>(i));
        via.push_back(static_cast<std::uint32_t>(g));
      }
      right.push_back(it->second);
    }
  }
  const std::size_t n = out.elements.size();
  out.table.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::uint16_t* row = &out.table[x * n];
    row[0] = static_cast<std::uint16_t>(x);
    for (std::size_t y = 1; y < n; ++y) {
      row[y] = static_cast<std::uint16_t>(right[static_cast<std::size_t>(row[parent[y]]) * ng + via[y]]);
    }
  }
  for (std::size_t g = 0; g < ng; ++g) out.generator_ids.push_back(ng ? right[g] : 0);
  return out;
}

inline std::vector<Elem> dedupe_generators(std::vector<Elem> ids) {
  std::vector<Elem> out;
  for (Elem x : ids) {
    if (x != 0 && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// Closure of permutation generators on a common point set.
inline GroupPtr group_from_generators(const std::vector<Permutation>& perms, std::string name = "") {
  if (perms.empty()) throw Error(ErrorKind::InvalidPermutation, "no generators");
  const std::size_t degree = perms.front().degree();
  for (const auto& p : perms) {
    if (p.degree() != degree) throw Error(ErrorKind::InvalidPermutation, "generators act on different point sets");
  }
  auto c = detail::close<Permutation, PermutationHash>(
      Permutation::identity(degree), perms, [](const Permutation& a, const Permutation& b) { return a * b; },
      limits().max_group_order);
  const std::size_t n = c.elements.size();
  return std::make_shared<const FiniteGroup>(std::move(name), n, std::move(c.table), std::move(c.generator_ids),
                                             std::move(c.elements));
}

/// Closure of arbitrary hashable values under an associative operation.
template <class T, class Hash = std::hash<T>, class Mul>
GroupPtr group_from_operation(std::string name, const T& identity, const std::vector<T>& gens, Mul&& mul) {
  auto c = detail::close<T, Hash>(identity, gens, std::forward<Mul>(mul), limits().max_group_order);
  const std::size_t n = c.elements.size();
  return std::make_shared<const FiniteGroup>(std::move(name), n, std::move(c.table),
                                             detail::dedupe_generators(std::move(c.generator_ids)));
}

// ---------------------------------------------------------------------------
// Subgroups

/// A subset of a parent group's elements closed under its multiplication.
/// Cheap to copy: the member data is shared.
class Subgroup {
 public:
  Subgroup() = default;

  Subgroup(GroupPtr parent, std::vector<char> mask, std::vector<Elem> members, std::vector<Elem> gens)
      : d_(std::make_shared<const Data>(Data{std::move(parent), std::move(mask), std::move(members), std::move(gens)})) {}

  const GroupPtr& parent() const { return d_->parent; }
  std::size_t size() const { return d_->members.size(); }
  std::size_t order() const { return size(); }
  bool contains(Elem x) const { return d_->mask[x] != 0; }
  const std::vector<Elem>& members() const { return d_->members; }
  /// A small generating set (no identity, no redundant elements).
  const std::vector<Elem>& generators() const { return d_->gens; }
  const std::vector<char>& mask() const { return d_->mask; }
  bool is_trivial() const { return size() == 1; }
  bool is_whole() const { return size() == d_->parent->order(); }

  bool subset_of(const Subgroup& other) const {
    if (size() > other.size()) return false;
    for (Elem x : members()) {
      if (!other.contains(x)) return false;
    }
    return true;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.d_->parent == b.d_->parent && a.d_->members == b.d_->members;
  }

  /// Orders by size, then lexicographically by member list.
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  }

 private:
  struct Data {
    GroupPtr parent;
    std::vector<char> mask;
    std::vector<Elem> members;
    std::vector<Elem> gens;
  };
  std::shared_ptr<const Data> d_;
};

namespace detail {

/// Incrementally grows a subgroup one generator at a time (Dimino's
/// coset-extension step).
class SubgroupBuilder {
 public:
  explicit SubgroupBuilder(GroupPtr g) : g_(std::move(g)), mask_(g_->order(), 0), elems_{0} { mask_[0] = 1; }

  explicit SubgroupBuilder(const Subgroup& h)
      : g_(h.parent()), mask_(h.mask()), elems_(h.members()), gens_(h.generators()) {}

  bool contains(Elem x) const { return mask_[x] != 0; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<Elem>& generators() const { return gens_; }

  bool add(Elem s) {
    if (mask_[s]) return false;
    gens_.push_back(s);
    const std::size_t h = elems_.size();
    const FiniteGroup& G = *g_;
    auto add_coset = [&](Elem r) {
      for (std::size_t i = 0; i < h; ++i) {
        const Elem y = G.mul(elems_[i], r);
        mask_[y] = 1;
        elems_.push_back(y);
      }
    };
    std::vector<Elem> reps{s};
    add_coset(s);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (Elem g : gens_) {
        const Elem y = G.mul(reps[i], g);
        if (!mask_[y]) {
          add_coset(y);
          reps.push_back(y);
        }
      }
    }
    return true;
  }

  /// Extends to the smallest subgroup containing `*this` and normalized by
  /// the group generated by `conjugators`.
  void close_under_conjugation(std::span<const Elem> conjugators) {
    const FiniteGroup& G = *g_;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      for (Elem c : conjugators) add(G.conj(gens_[i], c));
    }
  }

  Subgroup finish() && {
    std::sort(elems_.begin(), elems_.end());
    return Subgroup(std::move(g_), std::move(mask_), std::move(elems_), std::move(gens_));
  }

 private:
  GroupPtr g_;
  std::vector<char> mask_;
  std::vector<Elem> elems_;
  std::vector<Elem> gens_;
};

inline void check_range(const FiniteGroup& G, std::span<const Elem> xs) {
  for (Elem x : xs) {
    if (x >= G.order()) {
      throw Error(ErrorKind::OutOfRange, "element id " + std::to_string(x) + " outside group of order " +
                                             std::to_string(G.order()));
    }
  }
}

inline void check_same_parent(const Subgroup& a, const Subgroup& b) {
  if (a.parent() != b.parent()) throw Error(ErrorKind::ParentMismatch, "subgroups of different groups");
}

}  // namespace detail

inline Subgroup trivial_subgroup(const GroupPtr& G) { return detail::SubgroupBuilder(G).finish(); }

inline Subgroup whole_group(const GroupPtr& G) {
  std::vector<char> mask(G->order(), 1);
  std::vector<Elem> members(G->order());
  std::iota(members.begin(), members.end(), Elem{0});
  return Subgroup(G, std::move(mask), std::move(members), detail::dedupe_generators(G->generators()));
}

/// Smallest subgroup containing `seed`.
inline Subgroup subgroup_generated(const GroupPtr& G, std::span<const Elem> seed) {
  detail::check_range(*G, seed);
  detail::SubgroupBuilder b(G);
  for (Elem s : seed) b.add(s);
  return std::move(b).finish();
}

inline Subgroup subgroup_generated(const GroupPtr& G, std::initializer_list<Elem> seed) {
  return subgroup_generated(G, std::span<const Elem>(seed.begin(), seed.size()));
}

/// Builds a Subgroup from a membership mask known to be closed.
inline Subgroup subgroup_from_mask(const GroupPtr& G, const std::vector<char>& mask) {
  detail::SubgroupBuilder b(G);
  for (Elem x = 0; x < G->order(); ++x) {
    if (mask[x] && !b.contains(x)) b.add(x);
  }
  return std::move(b).finish();
}

inline Subgroup join(const Subgroup& a, const Subgroup& b) {
  detail::check_same_parent(a, b);
  if (b.subset_of(a)) return a;
  detail::SubgroupBuilder builder(a);
  for (Elem g : b.generators()) builder.add(g);
  return std::move(builder).finish();
}

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  detail::check_same_parent(a, b);
  std::vector<char> mask(a.parent()->order(), 0);
  for (Elem x : a.members()) mask[x] = b.contains(x);
  return subgroup_from_mask(a.parent(), mask);
}

/// True when every element of `by` conjugates `h` into itself.
inline bool normalizes(std::span<const Elem> by, const Subgroup& h) {
  const FiniteGroup& G = *h.parent();
  for (Elem x : h.generators()) {
    for (Elem g : by) {
      if (!h.contains(G.conj(x, g))) return false;
    }
  }
  return true;
}

inline bool is_normal(const Subgroup& h) { return normalizes(h.parent()->generators(), h); }

inline bool is_normal_in(const Subgroup& n, const Subgroup& h) {
  detail::check_same_parent(n, h);
  return n.subset_of(h) && normalizes(h.generators(), n);
}

struct SetProduct {
  std::vector<Elem> elements;  // sorted
  bool is_subgroup = false;
};

/// {ab : a in A, b in B} as a mask.
inline std::vector<char> product_mask(const Subgroup& a, const Subgroup& b) {
  const FiniteGroup& G = *a.parent();
  std::vector<char> mask(G.order(), 0);
  for (Elem x : a.members()) {
    for (Elem y : b.members()) mask[G.mul(x, y)] = 1;
  }
  return mask;
}

/// True iff AB = BA, i.e. AB is a subgroup.
inline bool permutes(const Subgroup& a, const Subgroup& b) {
  detail::check_same_parent(a, b);
  if (a.subset_of(b) || b.subset_of(a)) return true;
  const FiniteGroup& G = *a.parent();
  const auto ab = product_mask(a, b);
  for (Elem y : b.members()) {
    for (Elem x : a.members()) {
      if (!ab[G.mul(y, x)]) return false;
    }
  }
  return true;
}

inline SetProduct set_product(const Subgroup& a, const Subgroup& b) {
  detail::check_same_parent(a, b);
  const auto mask = product_mask(a, b);
  SetProduct out;
  for (Elem x = 0; x < mask.size(); ++x) {
    if (mask[x]) out.elements.push_back(x);
  }
  out.is_subgroup = permutes(a, b);
  return out;
}

/// Smallest normal subgroup of G containing `seed`.
inline Subgroup normal_closure(const GroupPtr& G, std::span<const Elem> seed) {
  detail::check_range(*G, seed);
  detail::SubgroupBuilder b(G);
  for (Elem s : seed) b.add(s);
  b.close_under_conjugation(G->generators());
  return std::move(b).finish();
}

inline Subgroup normal_closure(const GroupPtr& G, std::initializer_list<Elem> seed) {
  return normal_closure(G, std::span<const Elem>(seed.begin(), seed.size()));
}

/// Normal closure in G of `base` together with `extra`; `base` must already
/// be normal.
inline Subgroup normal_closure_over(const Subgroup& base, std::span<const Elem> extra) {
  detail::SubgroupBuilder b(base);
  const std::size_t before = b.generators().size();
  for (Elem s : extra) b.add(s);
  if (b.generators().size() == before) return base;
  b.close_under_conjugation(base.parent()->generators());
  return std::move(b).finish();
}

/// Normal closure of `seed` inside the subgroup `ambient`.
inline Subgroup normal_closure_in(const Subgroup& ambient, std::span<const Elem> seed) {
  detail::SubgroupBuilder b(ambient.parent());
  for (Elem s : seed) b.add(s);
  b.close_under_conjugation(ambient.generators());
  return std::move(b).finish();
}

/// Largest normal subgroup of G inside `h`: the union of the conjugacy
/// classes contained in `h`.
inline Subgroup core(const Subgroup& h) {
  const GroupPtr& G = h.parent();
  std::vector<char> mask(G->order(), 0);
  for (const auto& cls : G->conjugacy_classes()) {
    const bool inside = std::all_of(cls.begin(), cls.end(), [&](Elem x) { return h.contains(x); });
    if (inside) {
      for (Elem x : cls) mask[x] = 1;
    }
  }
  return subgroup_from_mask(G, mask);
}

/// C_H(S): elements of `h` commuting with every element of `s`.
inline Subgroup centralizer_in(const Subgroup& h, const Subgroup& s) {
  detail::check_same_parent(h, s);
  const FiniteGroup& G = *h.parent();
  std::vector<char> mask(G.order(), 0);
  for (Elem x : h.members()) {
    bool ok = true;
    for (Elem y : s.generators()) {
      if (G.mul(x, y) != G.mul(y, x)) {
        ok = false;
        break;
      }
    }
    mask[x] = ok;
  }
  return subgroup_from_mask(h.parent(), mask);
}

inline Subgroup centralizer(const Subgroup& s) { return centralizer_in(whole_group(s.parent()), s); }

/// Z(G)
inline Subgroup center(const GroupPtr& G) {
  const Subgroup all = whole_group(G);
  return centralizer_in(all, all);
}

/// Z(H) as a subgroup of H's parent.
inline Subgroup center_of(const Subgroup& h) { return centralizer_in(h, h); }

/// H' = <[a, b] : a, b in H>.
inline Subgroup derived_subgroup(const Subgroup& h) {
  const FiniteGroup& G = *h.parent();
  std::vector<Elem> comms;
  const auto& gens = h.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(G.comm(gens[i], gens[j]));
  }
  return normal_closure_in(h, comms);
}

inline Subgroup derived_subgroup(const GroupPtr& G) { return derived_subgroup(whole_group(G)); }

/// [N, G] for a normal subgroup N.
inline Subgroup commutator_with_group(const Subgroup& n) {
  const FiniteGroup& G = *n.parent();
  std::vector<Elem> comms;
  for (Elem x : n.generators()) {
    for (Elem g : G.generators()) comms.push_back(G.comm(x, g));
  }
  return normal_closure(n.parent(), comms);
}

/// True iff every element of `a` commutes with every element of `b`.
inline bool commute_elementwise(const Subgroup& a, const Subgroup& b) {
  detail::check_same_parent(a, b);
  const FiniteGroup& G = *a.parent();
  for (Elem x : a.generators()) {
    for (Elem y : b.generators()) {
      if (G.mul(x, y) != G.mul(y, x)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Quotients and embedded subgroups

/// G/N with the projection map. Element 0 of the quotient is the coset N.
struct Quotient {
  GroupPtr group;
  std::vector<Elem> proj;
  Subgroup kernel;

  Subgroup image(const Subgroup& h) const {
    std::vector<Elem> gens;
    for (Elem x : h.generators()) gens.push_back(proj[x]);
    return subgroup_generated(group, gens);
  }

  Elem image(Elem x) const { return proj[x]; }

  Subgroup preimage(const Subgroup& s) const {
    if (s.parent() != group) throw Error(ErrorKind::ParentMismatch, "subgroup is not in this quotient");
    const GroupPtr& G = kernel.parent();
    std::vector<char> mask(G->order(), 0);
    for (Elem g = 0; g < G->order(); ++g) mask[g] = s.contains(proj[g]);
    return subgroup_from_mask(G, mask);
  }
};

inline Quotient quotient_group(const Subgroup& n, std::string name = "") {
  const GroupPtr& G = n.parent();
  if (!is_normal(n)) throw Error(ErrorKind::NotNormal, "subgroup is not normal in " + G->name());
  const std::size_t order = G->order();
  std::vector<Elem> label(order, kNoElem);
  std::vector<Elem> rep;
  for (Elem g = 0; g < order; ++g) {
    if (label[g] != kNoElem) continue;
    const auto l = static_cast<Elem>(rep.size());
    rep.push_back(g);
    for (Elem k : n.members()) label[G->mul(k, g)] = l;
  }
  std::vector<Elem> gens;
  for (Elem g : G->generators()) gens.push_back(label[g]);
  auto c = detail::close<Elem>(Elem{0}, gens, [&](Elem a, Elem b) { return label[G->mul(rep[a], rep[b])]; },
                               limits().max_group_order);
  std::vector<Elem> local(rep.size(), kNoElem);
  for (std::size_t i = 0; i < c.elements.size(); ++i) local[c.elements[i]] = static_cast<Elem>(i);
  Quotient q;
  if (name.empty()) name = G->name() + "/" + std::to_string(n.size());
  q.group = std::make_shared<const FiniteGroup>(std::move(name), c.elements.size(), std::move(c.table),
                                                detail::dedupe_generators(std::move(c.generator_ids)));
  q.proj.resize(order);
  for (Elem g = 0; g < order; ++g) q.proj[g] = local[label[g]];
  q.kernel = n;
  return q;
}

/// A subgroup re-materialized as a standalone group.
struct Embedding {
  GroupPtr group;
  std::vector<Elem> to_parent;    // local id -> parent id
  std::vector<Elem> from_parent;  // parent id -> local id or kNoElem
  Subgroup source;

  /// Image of a subgroup of the parent contained in `source`.
  Subgroup to_local(const Subgroup& s) const {
    std::vector<Elem> gens;
    for (Elem x : s.generators()) {
      if (from_parent[x] == kNoElem) throw Error(ErrorKind::ParentMismatch, "subgroup leaves the embedded group");
      gens.push_back(from_parent[x]);
    }
    return subgroup_generated(group, gens);
  }

  Subgroup to_parent_subgroup(const Subgroup& s) const {
    std::vector<Elem> gens;
    for (Elem x : s.generators()) gens.push_back(to_parent[x]);
    return subgroup_generated(source.parent(), gens);
  }
};

inline Embedding as_group(const Subgroup& h, std::string name = "") {
  const GroupPtr& G = h.parent();
  auto c = detail::close<Elem>(Elem{0}, h.generators(), [&](Elem a, Elem b) { return G->mul(a, b); },
                               limits().max_group_order);
  Embedding e;
  if (name.empty()) name = h.is_whole() ? G->name() : G->name() + "[" + std::to_string(h.size()) + "]";
  e.from_parent.assign(G->order(), kNoElem);
  for (std::size_t i = 0; i < c.elements.size(); ++i) e.from_parent[c.elements[i]] = static_cast<Elem>(i);
  std::vector<Permutation> perms;
  if (G->has_permutations()) {
    for (Elem x : c.elements) perms.push_back(G->permutation(x));
  }
  e.group = std::make_shared<const FiniteGroup>(std::move(name), c.elements.size(), std::move(c.table),
                                                detail::dedupe_generators(std::move(c.generator_ids)),
                                                std::move(perms));
  e.to_parent = std::move(c.elements);
  e.source = h;
  return e;
}

// ---------------------------------------------------------------------------
// Sections

/// H/K with K normal in H, plus a transversal of K in H.
struct Section {
  Subgroup top;
  Subgroup bottom;
  std::vector<Elem> transversal;  // smallest element of each coset, ascending
  std::size_t factor_order = 0;
};

inline Section make_section(const Subgroup& top, const Subgroup& bottom) {
  detail::check_same_parent(top, bottom);
  if (!is_normal_in(bottom, top)) throw Error(ErrorKind::NotNormal, "section bottom is not normal in its top");
  const FiniteGroup& G = *top.parent();
  Section s{top, bottom, {}, top.size() / bottom.size()};
  std::vector<char> seen(G.order(), 0);
  for (Elem h : top.members()) {
    if (seen[h]) continue;
    s.transversal.push_back(h);
    for (Elem k : bottom.members()) seen[G.mul(k, h)] = 1;
  }
  return s;
}

namespace detail {
inline void require_g_invariant(const Section& sec) {
  const auto& gens = sec.top.parent()->generators();
  if (!normalizes(gens, sec.top) || !normalizes(gens, sec.bottom)) {
    throw Error(ErrorKind::SectionNotGInvariant, "section is not normalized by the whole group");
  }
}
}  // namespace detail

/// C_G(H/K) = {g : g^-1 h g h^-1 in K for all h in H}.
inline Subgroup centralizer_of_section(const Section& sec) {
  detail::require_g_invariant(sec);
  const GroupPtr& G = sec.top.parent();
  std::vector<char> mask(G->order(), 0);
  for (Elem g = 0; g < G->order(); ++g) {
    bool ok = true;
    for (Elem h : sec.top.generators()) {
      if (!sec.bottom.contains(G->mul(G->conj(h, g), G->inv(h)))) {
        ok = false;
        break;
      }
    }
    mask[g] = ok;
  }
  return subgroup_from_mask(G, mask);
}

/// (H/K) x| (G/C_G(H/K)) built on pairs (a, x) with
/// (a, x)(b, y) = (a * x b x^-1, xy).
inline GroupPtr section_semidirect(const Section& sec, const Subgroup& centralizer) {
  detail::require_g_invariant(sec);
  const GroupPtr& G = sec.top.parent();
  const FiniteGroup& g = *G;
  const std::size_t n = g.order();

  std::vector<std::uint32_t> hk_of(n, 0xFFFFFFFFu);
  std::vector<Elem> hk_rep;
  for (Elem h : sec.top.members()) {
    if (hk_of[h] != 0xFFFFFFFFu) continue;
    const auto l = static_cast<std::uint32_t>(hk_rep.size());
    hk_rep.push_back(h);
    for (Elem k : sec.bottom.members()) hk_of[g.mul(k, h)] = l;
  }
  std::vector<std::uint32_t> gc_of(n, 0xFFFFFFFFu);
  std::vector<Elem> gc_rep;
  for (Elem x = 0; x < n; ++x) {
    if (gc_of[x] != 0xFFFFFFFFu) continue;
    const auto l = static_cast<std::uint32_t>(gc_rep.size());
    gc_rep.push_back(x);
    for (Elem c : centralizer.members()) gc_of[g.mul(c, x)] = l;
  }
  const std::size_t m = hk_rep.size();
  const std::size_t q = gc_rep.size();
  std::vector<std::uint32_t> hk_mul(m * m), gc_mul(q * q), act(q * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) hk_mul[a * m + b] = hk_of[g.mul(hk_rep[a], hk_rep[b])];
  }
  for (std::size_t x = 0; x < q; ++x) {
    for (std::size_t y = 0; y < q; ++y) gc_mul[x * q + y] = gc_of[g.mul(gc_rep[x], gc_rep[y])];
    const Elem xi = g.inv(gc_rep[x]);
    for (std::size_t b = 0; b < m; ++b) act[x * m + b] = hk_of[g.mul(g.mul(gc_rep[x], hk_rep[b]), xi)];
  }
  auto encode = [m](std::uint64_t a, std::uint64_t x) { return a + m * x; };
  auto mul = [&](std::uint64_t u, std::uint64_t v) {
    const std::uint64_t a = u % m, x = u / m, b = v % m, y = v / m;
    return encode(hk_mul[a * m + act[x * m + b]], gc_mul[x * q + y]);
  };
  std::vector<std::uint64_t> gens;
  for (Elem h : sec.top.generators()) {
    if (hk_of[h] != 0) gens.push_back(encode(hk_of[h], 0));
  }
  for (Elem x : g.generators()) {
    if (gc_of[x] != 0) gens.push_back(encode(0, gc_of[x]));
  }
  return group_from_operation<std::uint64_t>(
      "(" + std::to_string(m) + "):(" + std::to_string(q) + ")", std::uint64_t{0}, gens, mul);
}

inline GroupPtr section_semidirect(const Section& sec) {
  return section_semidirect(sec, centralizer_of_section(sec));
}

// ---------------------------------------------------------------------------
// Constructions

inline GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, std::string name = "") {
  const std::uint64_t na = a->order();
  std::vector<std::uint64_t> gens;
  for (Elem x : a->generators()) gens.push_back(x);
  for (Elem y : b->generators()) gens.push_back(na * y);
  if (name.empty()) name = a->name() + "x" + b->name();
  return group_from_operation<std::uint64_t>(std::move(name), std::uint64_t{0}, gens,
                                             [&](std::uint64_t u, std::uint64_t v) {
                                               return a->mul(static_cast<Elem>(u % na), static_cast<Elem>(v % na)) +
                                                      na * b->mul(static_cast<Elem>(u / na), static_cast<Elem>(v / na));
                                             });
}

/// Renamed view of a group (shares nothing mutable; copies the table).
inline GroupPtr renamed(const GroupPtr& g, std::string name) {
  std::vector<std::uint16_t> table(g->table().begin(), g->table().end());
  std::vector<Permutation> perms;
  if (g->has_permutations()) {
    for (Elem x = 0; x < g->order(); ++x) perms.push_back(g->permutation(x));
  }
  return std::make_shared<const FiniteGroup>(std::move(name), g->order(), std::move(table), g->generators(),
                                             std::move(perms));
}

struct AxiomReport {
  bool ok = true;
  bool exhaustive = true;
  std::string failure;
};

/// Identity, inverse and associativity laws; exhaustive up to the configured
/// order, random triples above it.
inline AxiomReport verify_group_axioms(const GroupPtr& gp, std::uint64_t seed = 1) {
  const FiniteGroup& g = *gp;
  AxiomReport r;
  const std::size_t n = g.order();
  for (Elem x = 0; x < n; ++x) {
    if (g.mul(0, x) != x || g.mul(x, 0) != x) return {false, true, "identity law fails at " + std::to_string(x)};
    if (g.mul(x, g.inv(x)) != 0 || g.mul(g.inv(x), x) != 0)
      return {false, true, "inverse law fails at " + std::to_string(x)};
  }
  auto assoc = [&](Elem a, Elem b, Elem c) { return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)); };
  if (n <= limits().axiom_check_exhaustive) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (!assoc(a, b, c)) return {false, true, "associativity fails"};
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
    for (int i = 0; i < 200000; ++i) {
      if (!assoc(pick(rng), pick(rng), pick(rng))) return {false, false, "associativity fails"};
    }
  }
  if (subgroup_generated(gp, g.generators()).size() != n) {
    return {false, r.exhaustive, "generators do not generate the group"};
  }
  return r;
}

}  // namespace formation_lab

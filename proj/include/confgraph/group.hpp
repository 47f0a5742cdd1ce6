#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "confgraph/algebra.hpp"

namespace confgraph {

using Element = std::size_t;

/// Blocks of element indices. Canonical form: members sorted within each
/// block, blocks ordered by their minimal element.
using Partition = std::vector<std::vector<Element>>;

enum class GroupErrorKind {
    Malformed,        // table is not square or has out-of-range entries
    MissingIdentity,
    MissingInverse,
    NonAssociative,
    TooLarge,         // order above the checked limit without a trust flag
    Unsupported,      // standard group with unsupported parameters
    NotSubgroup,
};

class GroupError : public Error {
public:
    GroupError(GroupErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
    GroupErrorKind kind() const noexcept { return kind_; }

private:
    GroupErrorKind kind_;
};

class Subset;

/// A finite group stored as its Cayley table. The identity is always index 0.
class FiniteGroup {
public:
    static constexpr Element identity = 0;
    /// Associativity is verified (O(n^3)) up to this order; larger tables
    /// require `trust_unchecked`.
    static constexpr std::size_t kCheckedOrderLimit = 256;

    /// Validates the group axioms. If the identity is not at index 0 the two
    /// elements are swapped; names() keep the original indices as labels.
    static FiniteGroup from_cayley_table(const std::vector<std::vector<Element>>& table,
                                         bool trust_unchecked = false);

    std::size_t order() const noexcept { return order_; }
    Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
    Element inverse(Element a) const { return inverses_[a]; }
    /// h^-1 g h
    Element conjugate(Element g, Element h) const { return mul(mul(inverse(h), g), h); }
    bool is_abelian() const;

    const std::string& name(Element g) const { return names_[g]; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    /// Row of the input Cayley table that element g came from. Tables whose
    /// identity is not row 0 are re-indexed by swapping it with row 0.
    Element source_index(Element g) const {
        return g == identity ? source_identity_ : (g == source_identity_ ? identity : g);
    }
    /// Short human-readable description, e.g. "cyclic 6".
    const std::string& description() const noexcept { return description_; }

    std::vector<std::vector<Element>> table() const;

    /// The subgroup h as a group in its own right, re-indexed so that local
    /// index i corresponds to h.members()[i].
    FiniteGroup restrict_to(const Subset& h) const;

    FiniteGroup with_labels(std::vector<std::string> names, std::string description) &&;

private:
    FiniteGroup() = default;

    std::size_t order_ = 0;
    std::vector<Element> table_;
    std::vector<Element> inverses_;
    std::vector<std::string> names_;
    Element source_identity_ = identity;
    std::string description_;
};

/// Sorted set of distinct element indices of one group.
class Subset {
public:
    Subset() = default;
    /// Sorts and removes duplicates; throws GroupError(Malformed) for indices
    /// outside the group.
    Subset(const FiniteGroup& group, std::vector<Element> members);

    const std::vector<Element>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(Element g) const;
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    friend bool operator==(const Subset&, const Subset&) = default;

private:
    std::vector<Element> members_;
};

/// Smallest subgroup containing the seeds (always contains the identity).
Subset generated_subgroup(const FiniteGroup& group, const Subset& seeds);

/// Closed under products and inverses and contains the identity.
bool is_subgroup(const FiniteGroup& group, const Subset& h);

/// Left cosets gH in canonical order. Throws GroupError(NotSubgroup).
Partition left_cosets(const FiniteGroup& group, const Subset& h);

/// Right cosets Hg in canonical order. Throws GroupError(NotSubgroup).
Partition right_cosets(const FiniteGroup& group, const Subset& h);

/// g H g^-1 == H for every g. Precondition: h is a subgroup.
bool is_normal(const FiniteGroup& group, const Subset& h);

/// Sorts members and orders blocks by minimal element.
Partition canonicalize(Partition blocks);

// Standard groups with documented element orderings.

/// Residues 0..n-1 under addition mod n. 1 <= n <= 1024.
FiniteGroup cyclic_group(std::size_t n);

/// Order 2n. Index k < n is the rotation r^k, index n + k is r^k s, with
/// s r s = r^-1. 1 <= n <= 512.
FiniteGroup dihedral_group(std::size_t n);

/// Permutations of {0..n-1} in lexicographic order of their one-line
/// notation, composed right to left: (a*b)(x) = a(b(x)). 1 <= n <= 5.
/// Names use 1-based cycle notation, e.g. "(2 3)".
FiniteGroup symmetric_group(std::size_t n);

/// Lexicographic one-line permutations of {0..n-1}; element i of
/// symmetric_group(n) is result[i].
std::vector<std::vector<std::size_t>> lexicographic_permutations(std::size_t n);

/// Elements e, a, b, ab (indices 0..3), every element self-inverse.
FiniteGroup klein_group();

/// Pairs (x, y) at index x * |b| + y, multiplied componentwise. The product
/// order may not exceed 1024.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Parses "cyclic 6", "dihedral 4", "symmetric 3", "klein", and products such
/// as "cyclic 2 x symmetric 3" (left-associative).
FiniteGroup standard_group(std::string_view text);

}  // namespace confgraph

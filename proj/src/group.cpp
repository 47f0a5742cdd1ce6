#include "confgraph/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>

namespace confgraph {

namespace {

constexpr std::size_t kMaxStandardOrder = 1024;

std::vector<std::string> index_names(std::size_t n) {
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) {
        names[i] = std::to_string(i);
    }
    return names;
}

using Table = std::vector<std::vector<Element>>;

}  // namespace

FiniteGroup FiniteGroup::from_cayley_table(const Table& table, bool trust_unchecked) {
    const std::size_t n = table.size();
    if (n == 0) {
        throw GroupError(GroupErrorKind::Malformed, "Cayley table is empty");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) {
            std::ostringstream msg;
            msg << "Cayley table row " << i << " has " << table[i].size() << " entries, expected " << n;
            throw GroupError(GroupErrorKind::Malformed, msg.str());
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i][j] >= n) {
                std::ostringstream msg;
                msg << "Cayley table entry (" << i << ", " << j << ") = " << table[i][j] << " is out of range";
                throw GroupError(GroupErrorKind::Malformed, msg.str());
            }
        }
    }
    if (n > kCheckedOrderLimit && !trust_unchecked) {
        std::ostringstream msg;
        msg << "order " << n << " exceeds the associativity-checked limit " << kCheckedOrderLimit
            << "; pass the trust flag to accept it unchecked";
        throw GroupError(GroupErrorKind::TooLarge, msg.str());
    }

    // Locate the identity.
    std::size_t e = n;
    for (std::size_t cand = 0; cand < n && e == n; ++cand) {
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            ok = table[cand][j] == j && table[j][cand] == j;
        }
        if (ok) {
            e = cand;
        }
    }
    if (e == n) {
        throw GroupError(GroupErrorKind::MissingIdentity, "Cayley table has no identity element");
    }

    // Re-index so the identity sits at 0: swap labels e <-> 0.
    std::vector<Element> relabel(n);
    std::iota(relabel.begin(), relabel.end(), Element{0});
    std::swap(relabel[0], relabel[e]);  // relabel is an involution

    FiniteGroup g;
    g.order_ = n;
    g.source_identity_ = e;
    g.table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g.table_[i * n + j] = relabel[table[relabel[i]][relabel[j]]];
        }
    }
    g.names_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.names_[i] = std::to_string(relabel[i]);
    }

    g.inverses_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (g.mul(i, j) == identity && g.mul(j, i) == identity) {
                g.inverses_[i] = j;
                break;
            }
        }
        if (g.inverses_[i] == n) {
            std::ostringstream msg;
            msg << "element " << relabel[i] << " has no inverse";
            throw GroupError(GroupErrorKind::MissingInverse, msg.str());
        }
    }

    if (n <= kCheckedOrderLimit) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                const Element ab = g.mul(a, b);
                for (std::size_t c = 0; c < n; ++c) {
                    if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
                        std::ostringstream msg;
                        msg << "associativity fails for (" << relabel[a] << ", " << relabel[b] << ", "
                            << relabel[c] << ")";
                        throw GroupError(GroupErrorKind::NonAssociative, msg.str());
                    }
                }
            }
        }
    }

    g.description_ = "order " + std::to_string(n);
    return g;
}

bool FiniteGroup::is_abelian() const {
    for (std::size_t a = 0; a < order_; ++a) {
        for (std::size_t b = a + 1; b < order_; ++b) {
            if (mul(a, b) != mul(b, a)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<Element>> FiniteGroup::table() const {
    Table t(order_, std::vector<Element>(order_));
    for (std::size_t i = 0; i < order_; ++i) {
        for (std::size_t j = 0; j < order_; ++j) {
            t[i][j] = mul(i, j);
        }
    }
    return t;
}

FiniteGroup FiniteGroup::restrict_to(const Subset& h) const {
    if (!is_subgroup(*this, h)) {
        throw GroupError(GroupErrorKind::NotSubgroup, "restrict_to: subset is not a subgroup");
    }
    const auto& members = h.members();
    const std::size_t m = members.size();
    std::vector<Element> local(order_, order_);
    for (std::size_t i = 0; i < m; ++i) {
        local[members[i]] = i;
    }
    FiniteGroup sub;
    sub.order_ = m;
    sub.table_.resize(m * m);
    sub.inverses_.resize(m);
    sub.names_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            sub.table_[i * m + j] = local[mul(members[i], members[j])];
        }
        sub.inverses_[i] = local[inverse(members[i])];
        sub.names_[i] = names_[members[i]];
    }
    sub.description_ = "subgroup of " + description_;
    return sub;
}

FiniteGroup FiniteGroup::with_labels(std::vector<std::string> names, std::string description) && {
    if (names.size() != order_) {
        throw GroupError(GroupErrorKind::Malformed, "label count does not match group order");
    }
    names_ = std::move(names);
    description_ = std::move(description);
    return std::move(*this);
}

Subset::Subset(const FiniteGroup& group, std::vector<Element> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= group.order()) {
        std::ostringstream msg;
        msg << "subset member " << members_.back() << " outside group of order " << group.order();
        throw GroupError(GroupErrorKind::Malformed, msg.str());
    }
}

bool Subset::contains(Element g) const {
    return std::binary_search(members_.begin(), members_.end(), g);
}

Subset generated_subgroup(const FiniteGroup& group, const Subset& seeds) {
    std::vector<char> in(group.order(), 0);
    std::vector<Element> found{FiniteGroup::identity};
    in[FiniteGroup::identity] = 1;
    std::deque<Element> frontier{FiniteGroup::identity};
    // Right multiplication by the generators reaches every word in them; in a
    // finite group that already includes all inverses.
    while (!frontier.empty()) {
        const Element x = frontier.front();
        frontier.pop_front();
        for (Element s : seeds) {
            const Element y = group.mul(x, s);
            if (!in[y]) {
                in[y] = 1;
                found.push_back(y);
                frontier.push_back(y);
            }
        }
    }
    return Subset(group, std::move(found));
}

bool is_subgroup(const FiniteGroup& group, const Subset& h) {
    if (!h.contains(FiniteGroup::identity)) {
        return false;
    }
    for (Element a : h) {
        if (!h.contains(group.inverse(a))) {
            return false;
        }
        for (Element b : h) {
            if (!h.contains(group.mul(a, b))) {
                return false;
            }
        }
    }
    return true;
}

Partition canonicalize(Partition blocks) {
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) {
        if (x.empty() || y.empty()) {
            return x.size() < y.size();
        }
        return x.front() < y.front();
    });
    return blocks;
}

namespace {

template <typename Multiply>
Partition cosets(const FiniteGroup& group, const Subset& h, Multiply multiply) {
    if (!is_subgroup(group, h)) {
        throw GroupError(GroupErrorKind::NotSubgroup, "coset decomposition requires a subgroup");
    }
    std::vector<char> seen(group.order(), 0);
    Partition blocks;
    for (Element g = 0; g < group.order(); ++g) {
        if (seen[g]) {
            continue;
        }
        std::vector<Element> block;
        block.reserve(h.size());
        for (Element x : h) {
            const Element y = multiply(g, x);
            seen[y] = 1;
            block.push_back(y);
        }
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
    }
    return blocks;
}

}  // namespace

Partition left_cosets(const FiniteGroup& group, const Subset& h) {
    return cosets(group, h, [&](Element g, Element x) { return group.mul(g, x); });
}

Partition right_cosets(const FiniteGroup& group, const Subset& h) {
    return cosets(group, h, [&](Element g, Element x) { return group.mul(x, g); });
}

bool is_normal(const FiniteGroup& group, const Subset& h) {
    for (Element g = 0; g < group.order(); ++g) {
        for (Element x : h) {
            // g x g^-1
            if (!h.contains(group.conjugate(x, group.inverse(g)))) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Standard groups
// ---------------------------------------------------------------------------

namespace {

void require_range(std::string_view kind, std::size_t n, std::size_t lo, std::size_t hi) {
    if (n < lo || n > hi) {
        std::ostringstream msg;
        msg << kind << " group parameter " << n << " outside supported range [" << lo << ", " << hi << "]";
        throw GroupError(GroupErrorKind::Unsupported, msg.str());
    }
}

FiniteGroup trusted(const Table& t) {
    return FiniteGroup::from_cayley_table(t, true);
}

std::string cycle_notation(const std::vector<std::size_t>& perm) {
    std::vector<char> seen(perm.size(), 0);
    std::string out;
    for (std::size_t start = 0; start < perm.size(); ++start) {
        if (seen[start] || perm[start] == start) {
            continue;
        }
        out += '(';
        std::size_t x = start;
        bool first = true;
        while (!seen[x]) {
            seen[x] = 1;
            if (!first) {
                out += ' ';
            }
            out += std::to_string(x + 1);
            first = false;
            x = perm[x];
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

}  // namespace

FiniteGroup cyclic_group(std::size_t n) {
    require_range("cyclic", n, 1, kMaxStandardOrder);
    Table t(n, std::vector<Element>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            t[i][j] = (i + j) % n;
        }
    }
    return trusted(t).with_labels(index_names(n), "cyclic " + std::to_string(n));
}

FiniteGroup dihedral_group(std::size_t n) {
    require_range("dihedral", n, 1, kMaxStandardOrder / 2);
    const std::size_t order = 2 * n;
    Table t(order, std::vector<Element>(order));
    // (r^a s^f)(r^b s^g) = r^(a + (-1)^f b) s^(f xor g)
    for (std::size_t x = 0; x < order; ++x) {
        const std::size_t a = x % n;
        const std::size_t f = x / n;
        for (std::size_t y = 0; y < order; ++y) {
            const std::size_t b = y % n;
            const std::size_t g = y / n;
            const std::size_t rot = f == 0 ? (a + b) % n : (a + n - b) % n;
            t[x][y] = rot + n * (f ^ g);
        }
    }
    std::vector<std::string> names(order);
    for (std::size_t k = 0; k < n; ++k) {
        names[k] = k == 0 ? "e" : "r^" + std::to_string(k);
        names[n + k] = k == 0 ? "s" : "r^" + std::to_string(k) + " s";
    }
    return trusted(t).with_labels(std::move(names), "dihedral " + std::to_string(n));
}

std::vector<std::vector<std::size_t>> lexicographic_permutations(std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> all;
    do {
        all.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return all;
}

FiniteGroup symmetric_group(std::size_t n) {
    require_range("symmetric", n, 1, 5);
    const auto perms = lexicographic_permutations(n);
    const std::size_t order = perms.size();
    auto index_of = [&](const std::vector<std::size_t>& p) {
        const auto it = std::lower_bound(perms.begin(), perms.end(), p);
        return static_cast<Element>(it - perms.begin());
    };
    Table t(order, std::vector<Element>(order));
    std::vector<std::size_t> prod(n);
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = 0; j < order; ++j) {
            for (std::size_t x = 0; x < n; ++x) {
                prod[x] = perms[i][perms[j][x]];
            }
            t[i][j] = index_of(prod);
        }
    }
    std::vector<std::string> names(order);
    for (std::size_t i = 0; i < order; ++i) {
        names[i] = cycle_notation(perms[i]);
    }
    return trusted(t).with_labels(std::move(names), "symmetric " + std::to_string(n));
}

FiniteGroup klein_group() {
    Table t(4, std::vector<Element>(4));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            t[i][j] = i ^ j;
        }
    }
    return trusted(t).with_labels({"e", "a", "b", "ab"}, "klein");
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t na = a.order();
    const std::size_t nb = b.order();
    if (na * nb > kMaxStandardOrder) {
        std::ostringstream msg;
        msg << "direct product order " << na * nb << " exceeds " << kMaxStandardOrder;
        throw GroupError(GroupErrorKind::Unsupported, msg.str());
    }
    const std::size_t order = na * nb;
    Table t(order, std::vector<Element>(order));
    for (std::size_t x = 0; x < order; ++x) {
        for (std::size_t y = 0; y < order; ++y) {
            t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
        }
    }
    std::vector<std::string> names(order);
    for (std::size_t x = 0; x < order; ++x) {
        names[x] = "(" + a.name(x / nb) + ", " + b.name(x % nb) + ")";
    }
    return trusted(t).with_labels(std::move(names), a.description() + " x " + b.description());
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

FiniteGroup single_standard_group(std::string_view text) {
    text = trim(text);
    const auto space = text.find_first_of(" \t");
    const std::string_view kind = text.substr(0, space);
    if (kind == "klein") {
        if (space != std::string_view::npos && !trim(text.substr(space)).empty()) {
            throw GroupError(GroupErrorKind::Unsupported, "klein takes no size parameter");
        }
        return klein_group();
    }
    if (space == std::string_view::npos) {
        throw GroupError(GroupErrorKind::Unsupported, "standard group '" + std::string(text) + "' needs a size");
    }
    const std::string_view arg = trim(text.substr(space));
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
        throw GroupError(GroupErrorKind::Unsupported, "bad size parameter '" + std::string(arg) + "'");
    }
    if (kind == "cyclic") {
        return cyclic_group(n);
    }
    if (kind == "dihedral") {
        return dihedral_group(n);
    }
    if (kind == "symmetric") {
        return symmetric_group(n);
    }
    throw GroupError(GroupErrorKind::Unsupported, "unknown standard group kind '" + std::string(kind) + "'");
}

}  // namespace

FiniteGroup standard_group(std::string_view text) {
    std::vector<std::string_view> factors;
    std::size_t pos = 0;
    while (true) {
        const auto sep = text.find(" x ", pos);
        if (sep == std::string_view::npos) {
            factors.push_back(text.substr(pos));
            break;
        }
        factors.push_back(text.substr(pos, sep - pos));
        pos = sep + 3;
    }
    FiniteGroup result = single_standard_group(factors.front());
    for (std::size_t i = 1; i < factors.size(); ++i) {
        result = direct_product(result, single_standard_group(factors[i]));
    }
    return result;
}

}  // namespace confgraph

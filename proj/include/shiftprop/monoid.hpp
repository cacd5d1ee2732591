#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftprop {

/// Finite commutative monoid given by its Cayley table. Indices are element
/// ids; `unit` is the two-sided identity. Associativity, commutativity and
/// the unit law are validated at construction.
class FiniteMonoid {
public:
    FiniteMonoid(std::vector<std::vector<std::size_t>> table, std::size_t unit,
                 std::vector<std::string> labels = {})
        : table_(std::move(table)), unit_(unit), labels_(std::move(labels)) {
        const std::size_t n = table_.size();
        if (n == 0) throw std::invalid_argument("monoid must be nonempty");
        for (const auto& row : table_) {
            if (row.size() != n) throw std::invalid_argument("monoid table is not square");
            for (std::size_t v : row)
                if (v >= n) throw std::invalid_argument("monoid table entry out of range");
        }
        if (unit_ >= n) throw std::invalid_argument("monoid unit out of range");
        if (!labels_.empty() && labels_.size() != n)
            throw std::invalid_argument("monoid label count mismatch");
        for (std::size_t x = 0; x < n; ++x)
            if (table_[unit_][x] != x || table_[x][unit_] != x)
                throw std::invalid_argument("monoid unit law fails");
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                if (table_[x][y] != table_[y][x]) throw std::invalid_argument("monoid is not commutative");
                for (std::size_t z = 0; z < n; ++z)
                    if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
                        throw std::invalid_argument("monoid is not associative");
            }
    }

    /// Cyclic group Z/n written additively.
    static FiniteMonoid cyclic(std::size_t n) {
        std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
        std::vector<std::string> labels(n);
        for (std::size_t x = 0; x < n; ++x) {
            labels[x] = std::to_string(x);
            for (std::size_t y = 0; y < n; ++y) table[x][y] = (x + y) % n;
        }
        return FiniteMonoid(std::move(table), 0, std::move(labels));
    }

    static FiniteMonoid trivial() { return cyclic(1); }

    /// Subsets of {0..bits-1} under union; unit is the empty set.
    static FiniteMonoid subsets_under_union(std::size_t bits) {
        const std::size_t n = std::size_t{1} << bits;
        std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
        std::vector<std::string> labels(n);
        for (std::size_t x = 0; x < n; ++x) {
            std::string l = "{";
            for (std::size_t b = 0; b < bits; ++b)
                if (x >> b & 1) l += (l.size() > 1 ? "," : "") + std::to_string(b);
            labels[x] = l + "}";
            for (std::size_t y = 0; y < n; ++y) table[x][y] = x | y;
        }
        return FiniteMonoid(std::move(table), 0, std::move(labels));
    }

    std::size_t size() const { return table_.size(); }
    std::size_t unit() const { return unit_; }
    std::size_t op(std::size_t x, std::size_t y) const { return table_.at(x).at(y); }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    std::string label(std::size_t x) const {
        return labels_.empty() ? std::to_string(x) : labels_.at(x);
    }

    /// k-fold sum of x (k = 0 gives the unit).
    std::size_t times(std::size_t k, std::size_t x) const {
        std::size_t acc = unit_;
        for (std::size_t i = 0; i < k; ++i) acc = op(acc, x);
        return acc;
    }

private:
    std::vector<std::vector<std::size_t>> table_;
    std::size_t unit_;
    std::vector<std::string> labels_;
};

/// Monoid endomorphism, validated against the table.
class MonoidHom {
public:
    MonoidHom(const FiniteMonoid& monoid, std::vector<std::size_t> map) : map_(std::move(map)) {
        if (map_.size() != monoid.size()) throw std::invalid_argument("hom size mismatch");
        for (std::size_t v : map_)
            if (v >= monoid.size()) throw std::invalid_argument("hom image out of range");
        if (map_[monoid.unit()] != monoid.unit()) throw std::invalid_argument("hom does not fix the unit");
        for (std::size_t x = 0; x < monoid.size(); ++x)
            for (std::size_t y = 0; y < monoid.size(); ++y)
                if (map_[monoid.op(x, y)] != monoid.op(map_[x], map_[y]))
                    throw std::invalid_argument("hom is not multiplicative");
    }

    static MonoidHom identity(const FiniteMonoid& monoid) {
        std::vector<std::size_t> map(monoid.size());
        for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
        return MonoidHom(monoid, std::move(map));
    }

    std::size_t operator()(std::size_t x) const { return map_.at(x); }
    const std::vector<std::size_t>& map() const { return map_; }

private:
    std::vector<std::size_t> map_;
};

}  // namespace shiftprop

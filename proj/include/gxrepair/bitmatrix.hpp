#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace gxr {

class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitSet full(std::size_t n)
    {
        BitSet s(n);
        for (auto& x : s.w_)
            x = ~0ull;
        s.trim();
        return s;
    }

    std::size_t size() const noexcept { return n_; }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }

    bool any() const
    {
        for (auto x : w_)
            if (x)
                return true;
        return false;
    }

    bool all() const { return count() == n_; }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto x : w_)
            c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }

    BitSet& operator|=(const BitSet& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] |= o.w_[i];
        return *this;
    }

    BitSet& operator&=(const BitSet& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] &= o.w_[i];
        return *this;
    }

    BitSet& flip()
    {
        for (auto& x : w_)
            x = ~x;
        trim();
        return *this;
    }

    bool intersects(const BitSet& o) const
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i])
                return true;
        return false;
    }

    bool subset_of(const BitSet& o) const
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i])
                return false;
        return true;
    }

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t x = w_[k];
            while (x) {
                f(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

    friend bool operator==(const BitSet&, const BitSet&) = default;

    const std::vector<std::uint64_t>& words() const noexcept { return w_; }
    std::vector<std::uint64_t>& words() noexcept { return w_; }

private:
    void trim()
    {
        if (n_ % 64 && !w_.empty())
            w_.back() &= (1ull << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Square boolean matrix over node indices; row i holds the successors of i.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : n_(n), rows_(n, BitSet(n)) {}

    static BitMatrix identity(std::size_t n)
    {
        BitMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            m.rows_[i].set(i);
        return m;
    }

    static BitMatrix full(std::size_t n)
    {
        BitMatrix m(n);
        for (auto& r : m.rows_)
            r = BitSet::full(n);
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    bool test(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
    void set(std::size_t i, std::size_t j) { rows_[i].set(j); }
    void reset(std::size_t i, std::size_t j) { rows_[i].reset(j); }
    const BitSet& row(std::size_t i) const { return rows_[i]; }
    BitSet& row(std::size_t i) { return rows_[i]; }

    BitMatrix& operator|=(const BitMatrix& o)
    {
        for (std::size_t i = 0; i < n_; ++i)
            rows_[i] |= o.rows_[i];
        return *this;
    }

    BitMatrix& operator&=(const BitMatrix& o)
    {
        for (std::size_t i = 0; i < n_; ++i)
            rows_[i] &= o.rows_[i];
        return *this;
    }

    BitMatrix& flip()
    {
        for (auto& r : rows_)
            r.flip();
        return *this;
    }

    BitMatrix transposed() const
    {
        BitMatrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            rows_[i].for_each([&](std::size_t j) { t.rows_[j].set(i); });
        return t;
    }

    // Relational composition: (i,k) iff (i,j) in this and (j,k) in o for some j.
    BitMatrix compose(const BitMatrix& o) const
    {
        BitMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            rows_[i].for_each([&](std::size_t j) { r.rows_[i] |= o.rows_[j]; });
        return r;
    }

    // Reflexive-transitive closure (Warshall).
    BitMatrix closure() const
    {
        BitMatrix r = *this;
        for (std::size_t k = 0; k < n_; ++k) {
            const BitSet rk = r.rows_[k];
            for (std::size_t i = 0; i < n_; ++i)
                if (r.rows_[i].test(k))
                    r.rows_[i] |= rk;
        }
        for (std::size_t i = 0; i < n_; ++i)
            r.rows_[i].set(i);
        return r;
    }

    bool all() const
    {
        for (const auto& r : rows_)
            if (!r.all())
                return false;
        return true;
    }

    bool subset_of(const BitMatrix& o) const
    {
        for (std::size_t i = 0; i < n_; ++i)
            if (!rows_[i].subset_of(o.rows_[i]))
                return false;
        return true;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<BitSet> rows_;
};

} // namespace gxr

#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fclat {

/// Fixed-size dynamic bit vector packed into 64-bit words.
///
/// Index 0 is the lectically most significant position; all set operations
/// keep the unused high bits of the last word zero, so whole-word comparisons
/// and popcounts never need masking.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t nbits, bool value = false)
        : nbits_(nbits), w_(word_count_for(nbits), value ? ~std::uint64_t{0} : 0) {
        trim();
    }

    static Bitset from_indices(std::size_t nbits, std::initializer_list<std::size_t> idx) {
        Bitset b(nbits);
        for (std::size_t i : idx) b.set(i);
        return b;
    }

    std::size_t size() const { return nbits_; }
    std::size_t word_count() const { return w_.size(); }
    std::uint64_t word(std::size_t i) const { return w_[i]; }

    bool test(std::size_t i) const {
        assert(i < nbits_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i) {
        assert(i < nbits_);
        w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(std::size_t i) {
        assert(i < nbits_);
        w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    void set(std::size_t i, bool value) { value ? set(i) : reset(i); }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    void fill() {
        std::fill(w_.begin(), w_.end(), ~std::uint64_t{0});
        trim();
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t x : w_) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }

    bool any() const {
        for (std::uint64_t x : w_)
            if (x) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator&=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator^=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

    Bitset complement() const {
        Bitset r(*this);
        for (auto& x : r.w_) x = ~x;
        r.trim();
        return r;
    }

    bool is_subset_of(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool is_proper_subset_of(const Bitset& o) const {
        return is_subset_of(o) && *this != o;
    }

    bool intersects(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    std::size_t intersection_count(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
        return c;
    }

    bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }

    /// Bits [0, k) equal in both sets.
    bool equal_prefix(const Bitset& o, std::size_t k) const {
        assert(nbits_ == o.nbits_ && k <= nbits_);
        std::size_t full = k >> 6;
        for (std::size_t i = 0; i < full; ++i)
            if (w_[i] != o.w_[i]) return false;
        std::size_t rem = k & 63;
        if (rem) {
            std::uint64_t mask = (std::uint64_t{1} << rem) - 1;
            if ((w_[full] ^ o.w_[full]) & mask) return false;
        }
        return true;
    }

    std::size_t find_first() const { return find_from(0); }

    std::size_t find_next(std::size_t i) const { return find_from(i + 1); }

    template <class F>
    void for_each_set(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t x = w_[wi];
            while (x) {
                std::size_t b = static_cast<std::size_t>(std::countr_zero(x));
                f(wi * 64 + b);
                x &= x - 1;
            }
        }
    }

    std::vector<std::size_t> to_indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    /// Lectic (canonical) order: a < b iff the smallest index where they
    /// differ belongs to b.
    static bool lectic_less(const Bitset& a, const Bitset& b) {
        assert(a.nbits_ == b.nbits_);
        for (std::size_t i = 0; i < a.w_.size(); ++i) {
            std::uint64_t d = a.w_[i] ^ b.w_[i];
            if (d) {
                std::size_t bit = static_cast<std::size_t>(std::countr_zero(d));
                return (b.w_[i] >> bit) & 1u;
            }
        }
        return false;
    }

    std::string to_string(char one = 'X', char zero = '.') const {
        std::string s(nbits_, zero);
        for_each_set([&](std::size_t i) { s[i] = one; });
        return s;
    }

private:
    static std::size_t word_count_for(std::size_t n) { return (n + 63) / 64; }

    void trim() {
        std::size_t rem = nbits_ & 63;
        if (rem && !w_.empty()) w_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::size_t find_from(std::size_t i) const {
        if (i >= nbits_) return npos;
        std::size_t wi = i >> 6;
        std::uint64_t x = w_[wi] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (x) return wi * 64 + static_cast<std::size_t>(std::countr_zero(x));
            if (++wi == w_.size()) return npos;
            x = w_[wi];
        }
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace fclat

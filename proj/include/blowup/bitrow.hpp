#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace blowup {

// Fixed-width bit vector over vertex indices. This is the substrate for
// adjacency rows, candidate sets and common-neighborhood intersections;
// the hot loops below are deliberately branch-light.
class BitRow {
public:
    BitRow() : bits_(0) {}
    explicit BitRow(std::size_t bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

    static BitRow full(std::size_t bits) {
        BitRow r(bits);
        for (auto& w : r.w_) w = ~std::uint64_t{0};
        r.trim();
        return r;
    }

    std::size_t size() const { return bits_; }
    std::size_t word_count() const { return w_.size(); }
    const std::uint64_t* words() const { return w_.data(); }

    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    BitRow& operator&=(const BitRow& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    BitRow& operator|=(const BitRow& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    // this &= ~o
    BitRow& and_not(const BitRow& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    // this = a & b, all same width; no allocation if already sized.
    void assign_and(const BitRow& a, const BitRow& b) {
        bits_ = a.bits_;
        w_.resize(a.w_.size());
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] = a.w_[i] & b.w_[i];
    }

    friend BitRow operator&(const BitRow& a, const BitRow& b) {
        BitRow r(a.bits_);
        for (std::size_t i = 0; i < r.w_.size(); ++i) r.w_[i] = a.w_[i] & b.w_[i];
        return r;
    }

    friend bool operator==(const BitRow& a, const BitRow& b) {
        return a.bits_ == b.bits_ && a.w_ == b.w_;
    }

    static std::size_t count_and(const BitRow& a, const BitRow& b) {
        std::size_t c = 0;
        for (std::size_t i = 0; i < a.w_.size(); ++i)
            c += std::popcount(a.w_[i] & b.w_[i]);
        return c;
    }

    bool intersects(const BitRow& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool subset_of(const BitRow& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // First set bit at index >= from, or size() if none.
    std::size_t next_set(std::size_t from) const {
        if (from >= bits_) return bits_;
        std::size_t wi = from >> 6;
        std::uint64_t w = w_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return (wi << 6) + std::countr_zero(w);
            if (++wi == w_.size()) return bits_;
            w = w_[wi];
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                f((wi << 6) + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](std::size_t i) { v.push_back(static_cast<int>(i)); });
        return v;
    }

private:
    void trim() {
        if (bits_ & 63) w_.back() &= (~std::uint64_t{0}) >> (64 - (bits_ & 63));
    }

    std::size_t bits_;
    std::vector<std::uint64_t> w_;
};

}  // namespace blowup

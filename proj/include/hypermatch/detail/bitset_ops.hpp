#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace hypermatch::detail {

// Single-word and block bitset primitives shared by the counting and
// walk-tree engines.  Ops64 indexes up to 64 items; OpsDyn is unbounded.

struct Ops64 {
    using Mask = std::uint64_t;
    static Mask empty(int) { return 0; }
    static Mask full(int m) { return m == 64 ? ~0ull : (1ull << m) - 1; }
    static void set(Mask& m, int i) { m |= 1ull << i; }
    static void clear(Mask& m, int i) { m &= ~(1ull << i); }
    static bool test(Mask m, int i) { return (m >> i) & 1; }
    static bool is_empty(Mask m) { return m == 0; }
    static int popcount(Mask m) { return std::popcount(m); }
    static Mask and_(Mask a, Mask b) { return a & b; }
    static Mask or_(Mask a, Mask b) { return a | b; }
    static Mask andnot(Mask a, Mask b) { return a & ~b; }
    static bool intersects(Mask a, Mask b) { return (a & b) != 0; }
    static bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }
    static int lowest(Mask m) { return std::countr_zero(m); }
    static std::size_t hash(Mask m) { return std::hash<std::uint64_t>{}(m); }
    template <class F>
    static void for_each(Mask m, F&& f) {
        while (m) {
            f(std::countr_zero(m));
            m &= m - 1;
        }
    }
};

struct DynMask {
    std::vector<std::uint64_t> w;
    bool operator==(const DynMask&) const = default;
};

struct OpsDyn {
    using Mask = DynMask;
    static Mask empty(int m) { return Mask{std::vector<std::uint64_t>((m + 63) / 64, 0)}; }
    static Mask full(int m) {
        Mask r = empty(m);
        for (int i = 0; i < m; ++i)
            set(r, i);
        return r;
    }
    static void set(Mask& m, int i) { m.w[i / 64] |= 1ull << (i % 64); }
    static void clear(Mask& m, int i) { m.w[i / 64] &= ~(1ull << (i % 64)); }
    static bool test(const Mask& m, int i) { return (m.w[i / 64] >> (i % 64)) & 1; }
    static bool is_empty(const Mask& m) {
        for (auto b : m.w)
            if (b)
                return false;
        return true;
    }
    static int popcount(const Mask& m) {
        int c = 0;
        for (auto b : m.w)
            c += std::popcount(b);
        return c;
    }
    static Mask and_(Mask a, const Mask& b) {
        for (std::size_t i = 0; i < a.w.size(); ++i)
            a.w[i] &= b.w[i];
        return a;
    }
    static Mask or_(Mask a, const Mask& b) {
        for (std::size_t i = 0; i < a.w.size(); ++i)
            a.w[i] |= b.w[i];
        return a;
    }
    static Mask andnot(Mask a, const Mask& b) {
        for (std::size_t i = 0; i < a.w.size(); ++i)
            a.w[i] &= ~b.w[i];
        return a;
    }
    static bool intersects(const Mask& a, const Mask& b) {
        for (std::size_t i = 0; i < a.w.size(); ++i)
            if (a.w[i] & b.w[i])
                return true;
        return false;
    }
    static bool subset_of(const Mask& a, const Mask& b) {
        for (std::size_t i = 0; i < a.w.size(); ++i)
            if (a.w[i] & ~b.w[i])
                return false;
        return true;
    }
    static int lowest(const Mask& m) {
        for (std::size_t i = 0; i < m.w.size(); ++i)
            if (m.w[i])
                return static_cast<int>(i * 64) + std::countr_zero(m.w[i]);
        return -1;
    }
    static std::size_t hash(const Mask& m) {
        std::size_t h = 1469598103934665603ull;
        for (auto b : m.w) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return h;
    }
    template <class F>
    static void for_each(const Mask& m, F&& f) {
        for (std::size_t i = 0; i < m.w.size(); ++i) {
            std::uint64_t b = m.w[i];
            while (b) {
                f(static_cast<int>(i * 64) + std::countr_zero(b));
                b &= b - 1;
            }
        }
    }
};

template <class Ops>
struct MaskHash {
    std::size_t operator()(const typename Ops::Mask& m) const { return Ops::hash(m); }
};

} // namespace hypermatch::detail

#pragma once

#include <cassert>
#include <cstdint>

namespace ntors {

// Arithmetic in the prime field F_p. The modulus is a runtime value; every
// linear-algebra routine takes the field as its first argument.
struct Fp {
    uint32_t p{5};

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const {
        uint64_t r = 1, b = a % p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<uint32_t>(r);
    }
    // Fermat inverse; p is prime by construction.
    uint32_t inv(uint32_t a) const {
        assert(a % p != 0);
        return pow(a, p - 2);
    }
    uint32_t from_int(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<uint32_t>(r);
    }
};

bool is_prime(uint32_t m);

} // namespace ntors

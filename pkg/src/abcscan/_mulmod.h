#ifndef ABCSCAN_MULMOD_H
#define ABCSCAN_MULMOD_H
#include <stdint.h>

static inline uint64_t abc_mulmod(uint64_t a, uint64_t b, uint64_t m)
{
    return (uint64_t)(((unsigned __int128)a * b) % m);
}

static inline uint64_t abc_addmod(uint64_t a, uint64_t b, uint64_t m)
{
    uint64_t r = a + b;
    if (r < a || r >= m)
        r -= m;
    return r;
}

#endif

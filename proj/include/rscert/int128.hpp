#pragma once

#include <cstdint>
#include <string>

namespace rscert {

using Int128 = __int128;

inline std::string to_string(Int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    // Work with the unsigned magnitude so INT128_MIN does not overflow.
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1u
                                : static_cast<unsigned __int128>(v);
    std::string digits;
    while (mag != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10u)));
        mag /= 10u;
    }
    if (neg) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

}  // namespace rscert

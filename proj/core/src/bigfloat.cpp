#include "ufalab/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace ufalab {

std::string BigFloat::str(int significant_digits) const {
    std::vector<char> buffer(static_cast<std::size_t>(significant_digits) + 64);
    mpfr_snprintf(buffer.data(), buffer.size(), "%.*Re", significant_digits - 1, value_);
    return std::string(buffer.data());
}

}  // namespace ufalab

#include "dwsv/real.hpp"

#include <cstdio>
#include <cstdlib>

namespace dwsv {

std::string Real::str(int sig_digits) const {
    if (sig_digits < 2) sig_digits = 2;
    char* buf = nullptr;
    // %Re always uses '.' on MPFR builds without locale support, but guard
    // against locale-sensitive builds below.
    int n = mpfr_asprintf(&buf, "%.*Re", sig_digits - 1, v_);
    if (n < 0 || buf == nullptr) return "nan";
    std::string s(buf);
    mpfr_free_str(buf);
    for (auto& ch : s)
        if (ch == ',') ch = '.';
    return s;
}

} // namespace dwsv

#include "bellcomm/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace bellcomm {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw std::invalid_argument("malformed rational literal: " + text);
    }
    try {
        Rat r(text);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

std::string rat_str(const Rat& r) { return r.str(); }

Rat rational_from_double(double x, std::uint64_t max_denominator) {
    if (max_denominator == 0) throw std::invalid_argument("max_denominator must be positive");
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    bool neg = x < 0;
    double t = std::fabs(x);

    // Continued-fraction convergents p/q of t; stop before q exceeds the cap.
    BigInt p_prev = 1, q_prev = 0;  // h_{-1}
    BigInt p = 0, q = 1;            // h_0 seeded below
    double frac = t;
    BigInt a = static_cast<std::uint64_t>(std::floor(frac));
    p = a;
    q = 1;
    frac -= std::floor(frac);
    const BigInt cap = max_denominator;
    for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
        frac = 1.0 / frac;
        double fl = std::floor(frac);
        if (fl > 9e18) break;
        a = static_cast<std::uint64_t>(fl);
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        if (q_next > cap) {
            // Largest semiconvergent still under the cap.
            BigInt k = (cap - q_prev) / q;
            if (k * 2 >= a) {
                p = k * p + p_prev;
                q = k * q + q_prev;
            }
            break;
        }
        p_prev = p; q_prev = q;
        p = p_next; q = q_next;
        frac -= fl;
    }
    Rat r(p, q);
    return neg ? Rat(-r) : r;
}

}  // namespace bellcomm

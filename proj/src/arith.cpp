#include "qcoeff/arith.hpp"

#include <cctype>
#include <cmath>

namespace qcoeff {

Rat make_rational(const Int& num, const Int& den) {
    if (den == 0) {
        throw DomainError("rational denominator must be nonzero");
    }
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rational(const std::string& text) {
    const auto bad = [&] {
        return ParseError("invalid rational literal '" + text + "' (expected \"a\" or \"a/b\")");
    };
    const auto digits = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        }
        return true;
    };

    const std::size_t slash = text.find('/');
    std::string num_text = text.substr(0, slash);
    std::string den_text = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!digits(num_text) || !digits(den_text)) throw bad();
    // mpz_set_str takes a '-' sign but not '+'
    if (num_text[0] == '+') num_text.erase(0, 1);
    if (den_text[0] == '+') den_text.erase(0, 1);

    Int num(num_text), den(den_text);
    if (den == 0) throw ParseError("invalid rational literal '" + text + "' (zero denominator)");
    return make_rational(num, den);
}

std::string to_string(const Rat& q) {
    return q.get_str();
}

bool is_integral(const Rat& q) {
    return q.get_den() == 1;
}

long mod_inverse(long a, long m) {
    if (m < 2) throw DomainError("modulus must be at least 2");
    a %= m;
    if (a < 0) a += m;
    // extended Euclid: track x with old_r = x * a (mod m)
    long old_r = a, r = m;
    long old_x = 1, x = 0;
    while (r != 0) {
        const long quot = old_r / r;
        long tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_x - quot * x;
        old_x = x;
        x = tmp;
    }
    if (old_r != 1) {
        throw DenominatorNotInvertible("value " + std::to_string(a) + " is not invertible modulo " +
                                       std::to_string(m));
    }
    old_x %= m;
    if (old_x < 0) old_x += m;
    return old_x;
}

Residue reduce_mod(const Rat& q, long m) {
    if (m < 2) throw DomainError("modulus must be at least 2");
    const long num = static_cast<long>(mpz_fdiv_ui(q.get_num().get_mpz_t(), static_cast<unsigned long>(m)));
    const long den = static_cast<long>(mpz_fdiv_ui(q.get_den().get_mpz_t(), static_cast<unsigned long>(m)));
    long inv;
    try {
        inv = mod_inverse(den, m);
    } catch (const DenominatorNotInvertible&) {
        throw DenominatorNotInvertible("denominator of " + to_string(q) + " is not invertible modulo " +
                                       std::to_string(m));
    }
    return Residue{num * inv % m, m};
}

long long sigma(long long n) {
    if (n < 1) throw DomainError("sigma requires n >= 1");
    long long sum = 0;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        sum += d;
        if (d != n / d) sum += n / d;
    }
    return sum;
}

long long triangular(long long k) {
    if (k < 0) throw DomainError("triangular requires k >= 0");
    return k * (k + 1) / 2;
}

long long isqrt(long long n) {
    if (n < 0) throw DomainError("isqrt requires n >= 0");
    auto root = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (root > 0 && root * root > n) --root;
    while ((root + 1) * (root + 1) <= n) ++root;
    return root;
}

long long triangular_index(long long n) {
    if (n < 0) throw DomainError("triangular_index requires n >= 0");
    return (isqrt(8 * n + 1) - 1) / 2;
}

} // namespace qcoeff

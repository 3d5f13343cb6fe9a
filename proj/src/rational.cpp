#include "nccc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace nccc {

Q parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && (s.front() == ' ' || s.front() == '+'))
        s.erase(s.begin());
    while (!s.empty() && s.back() == ' ')
        s.pop_back();
    if (s.empty())
        throw std::invalid_argument("empty rational");
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/'))
            throw std::invalid_argument("malformed rational: " + s);
    }
    Q q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

Q make_q(long n, long d)
{
    if (d == 0)
        throw std::invalid_argument("make_q: zero denominator");
    Q q(n, d < 0 ? -d : d);
    if (d < 0)
        q = -q;
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) { return q.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

QVec to_qvec(const IntVec& v)
{
    QVec out;
    out.reserve(v.size());
    for (const auto& z : v)
        out.emplace_back(z);
    return out;
}

Q dot(const QVec& a, const QVec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

int sign(const Q& q) { return sgn(q); }

Int floor_q(const Q& q)
{
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int ceil_q(const Q& q)
{
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

bool is_integer(const Q& q) { return q.get_den() == 1; }

Int gcd_of(const IntVec& v)
{
    Int g = 0;
    for (const auto& z : v)
        g = gcd(g, z);
    return g;
}

IntVec primitive_integer(const QVec& v)
{
    Int l = 1;
    for (const auto& q : v)
        l = lcm(l, q.get_den());
    IntVec out;
    out.reserve(v.size());
    for (const auto& q : v)
        out.push_back(Int(q.get_num() * (l / q.get_den())));
    return primitive_integer(out);
}

IntVec primitive_integer(const IntVec& v)
{
    Int g = gcd_of(v);
    IntVec out = v;
    if (g == 0)
        return out;
    for (auto& z : out)
        z /= g;
    return out;
}

}  // namespace nccc

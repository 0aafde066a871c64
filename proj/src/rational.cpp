#include "e8jac/rational.hpp"

#include <stdexcept>

namespace e8jac {

std::string to_string(const Integer& z)
{
    return z.get_str();
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view text)
{
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+'))
        i = 1;
    if (i == text.size())
        throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    for (std::size_t j = i; j < text.size(); ++j)
        if (text[j] < '0' || text[j] > '9')
            throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    std::string s(text[0] == '+' ? text.substr(1) : text);
    return Integer(s, 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

} // namespace e8jac

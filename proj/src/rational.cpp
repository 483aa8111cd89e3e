#include "synabs/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace synabs {

namespace {

boost::multiprecision::cpp_int parse_int(const std::string& s, const std::string& whole) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) throw std::invalid_argument("bad fraction '" + whole + "'");
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("bad fraction '" + whole + "'");
    // leading zeros would select octal
    std::size_t first = s.find_first_not_of("+-0");
    std::string digits = first == std::string::npos ? "0" : s.substr(first);
    return boost::multiprecision::cpp_int(s[0] == '-' ? "-" + digits : digits);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        auto den = parse_int(t.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(parse_int(t.substr(0, slash), text), den);
    }
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.erase(0, 1);
        if (ip.empty()) ip = "0";
        if (fp.empty()) throw std::invalid_argument("bad fraction '" + text + "'");
        auto num = parse_int(ip + fp, text);
        if (neg) num = -num;
        boost::multiprecision::cpp_int den = 1;
        for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
        return Rational(num, den);
    }
    return Rational(parse_int(t, text));
}

std::string format_rational(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace synabs

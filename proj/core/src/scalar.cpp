#include "ibl/scalar.hpp"

#include <stdexcept>

namespace ibl {

std::string to_string(const Scalar& x)
{
    Scalar y = x;
    y.canonicalize();
    return y.get_str();
}

Scalar parse_scalar(const std::string& text)
{
    auto bad = [&] { return std::invalid_argument("malformed rational: '" + text + "'"); };
    if (text.empty())
        throw bad();
    size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    bool slash = false, digit = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/') {
            if (slash || !digit)
                throw bad();
            slash = true;
            digit = false;
        }
        else if (c >= '0' && c <= '9')
            digit = true;
        else
            throw bad();
    }
    if (!digit)
        throw bad();
    std::string s = text[0] == '+' ? text.substr(1) : text;
    Scalar x;
    if (x.set_str(s, 10) != 0 || x.get_den() == 0)
        throw bad();
    x.canonicalize();
    return x;
}

Scalar factorial(int n)
{
    mpz_class r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return Scalar(r);
}

Scalar binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Scalar(r);
}

}  // namespace ibl

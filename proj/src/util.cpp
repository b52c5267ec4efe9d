#include "hyperchrom/errors.hpp"
#include "hyperchrom/rational.hpp"

#include <cmath>
#include <sstream>

namespace hyperchrom {

Rational frac(const BigInt& p, const BigInt& q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::EmptyEdge: return "EmptyEdge";
    case ErrorKind::NonUniform: return "NonUniform";
    case ErrorKind::DuplicateVertexInTuple: return "DuplicateVertexInTuple";
    case ErrorKind::PartialColoring: return "PartialColoring";
    case ErrorKind::NotWithinLimit: return "NotWithinLimit";
    case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParamViolation: return "ParamViolation";
    case ErrorKind::AttemptsExhausted: return "AttemptsExhausted";
    case ErrorKind::EdgesOverlap: return "EdgesOverlap";
    case ErrorKind::EmptyS: return "EmptyS";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::PostconditionFailed: return "PostconditionFailed";
    case ErrorKind::AuditFailed: return "AuditFailed";
    case ErrorKind::ImproperInput: return "ImproperInput";
    case ErrorKind::NotF5Free: return "NotF5Free";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::GroundTooLarge: return "GroundTooLarge";
    case ErrorKind::ImproperColoring: return "ImproperColoring";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

BigInt binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    BigInt result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

BigInt power(const BigInt& base, std::uint64_t exp)
{
    BigInt result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exp);
    return result;
}

Rational power(const Rational& base, std::uint64_t exp)
{
    Rational result(power(base.get_num(), exp), power(base.get_den(), exp));
    result.canonicalize();
    return result;
}

Rational parse_rational(const std::string& text)
{
    if (text.empty())
        throw Error(ErrorKind::ParseError, "empty rational");
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t scale = text.size() - dot - 1;
        Rational q(BigInt(digits), power(BigInt(10), scale));
        q.canonicalize();
        return q;
    }
    try {
        Rational q(text);
        if (q.get_den() == 0)
            throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::ParseError, "not a rational: '" + text + "'");
    }
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

std::string to_decimal(const Rational& q, int digits)
{
    mpf_class f(q, 256);
    mp_exp_t exp;
    std::string mant = f.get_str(exp, 10, digits);
    if (mant.empty())
        return "0";
    bool negative = mant[0] == '-';
    if (negative)
        mant.erase(0, 1);
    std::ostringstream os;
    if (negative)
        os << '-';
    if (exp <= 0) {
        if (exp < -6) {
            os << mant[0] << '.' << (mant.size() > 1 ? mant.substr(1) : "0") << "e" << (exp - 1);
            return os.str();
        }
        os << "0." << std::string(static_cast<std::size_t>(-exp), '0') << mant;
    } else if (static_cast<std::size_t>(exp) >= mant.size()) {
        if (exp > 18) {
            os << mant[0] << '.' << (mant.size() > 1 ? mant.substr(1) : "0") << "e+" << (exp - 1);
            return os.str();
        }
        os << mant << std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
    } else {
        os << mant.substr(0, static_cast<std::size_t>(exp)) << '.' << mant.substr(static_cast<std::size_t>(exp));
    }
    return os.str();
}

} // namespace hyperchrom

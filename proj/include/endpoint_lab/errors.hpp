#ifndef ENDPOINT_LAB_ERRORS_HPP
#define ENDPOINT_LAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace endpoint_lab
{

// Root of every error thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Bad arithmetic input: zero denominator, sqrt of a negative, point outside a domain.
class domain_error : public error
{
public:
    using error::error;
};

// Malformed DSL text, rational literal, or certificate document.
class parse_error : public error
{
public:
    using error::error;
};

// A near-maximizer search ran out of budget or the model cannot supply a
// rational witness. The construction guarantees existence, so this is a
// corpus-oracle defect rather than a runtime condition.
class oracle_defect : public error
{
public:
    using error::error;
};

// A sample-point selector returned a point outside its subinterval.
class rule_violation : public error
{
public:
    using error::error;
};

// A certificate field does not match its independent recomputation.
class certificate_corruption : public error
{
public:
    using error::error;
};

} // namespace endpoint_lab

#endif

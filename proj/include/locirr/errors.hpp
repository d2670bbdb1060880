#pragma once

#include <stdexcept>
#include <string>

namespace locirr {

// Rejected input: bad arguments, precondition violations, malformed files.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public input_error {
public:
    parse_error(int line, const std::string& what)
        : input_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// A search or sampling loop ran out of its configured budget.
class budget_exhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class generation_failure : public budget_exhausted {
public:
    using budget_exhausted::budget_exhausted;
};

class solver_failure : public budget_exhausted {
public:
    using budget_exhausted::budget_exhausted;
};

// The exact search could not decide within its node budget.
class inconclusive : public budget_exhausted {
public:
    using budget_exhausted::budget_exhausted;
};

class infeasible_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Internal contract violations that should never surface.
class rounding_failure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class construction_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace locirr

#pragma once

#include <stdexcept>
#include <string>

namespace hypenny {

// Thrown when a numerical certificate fails: a constructed object does not
// satisfy the property it was supposed to satisfy.  Distinct from
// std::domain_error, which signals bad input to a query.
struct certification_error : std::runtime_error {
    explicit certification_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::domain_error(msg);
}

inline void check_cert(bool cond, const std::string& msg) {
    if (!cond) throw certification_error(msg);
}

}  // namespace hypenny

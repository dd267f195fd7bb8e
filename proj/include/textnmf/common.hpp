#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

/// Runtime contract check. Throws std::invalid_argument so that callers
/// (including the CLI) can distinguish misuse from data errors.
#define TEXTNMF_ASSERT(cond, msg)                                              \
    do {                                                                       \
        if (!(cond)) {                                                         \
            throw std::invalid_argument(msg);                                  \
        }                                                                      \
    } while (false)

namespace textnmf {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Raised for malformed or inconsistent input data (files, archives,
/// dimension mismatches between persisted artifacts).
class data_error : public std::runtime_error {
  public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Checks that every entry of m is finite and >= 0.
inline void assert_nonnegative(const RealMatrix& m, const char* name) {
    TEXTNMF_ASSERT((m.array() >= 0.0).all(),
                   std::string(name) + " must be elementwise nonnegative");
}

} // namespace textnmf

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace splitrx {

/// A density or estimate came out non-finite, or every term of a log-domain
/// sum underflowed. Distinct from std::invalid_argument (bad inputs).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace splitrx

// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_ERROR_HPP_
#define JEER_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace jeer {

// Fatal problem with input data (missing file, broken schema, violated
// invariant). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jeer

#endif  // JEER_ERROR_HPP_

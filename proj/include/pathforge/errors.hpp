// Copyright 2026 The pathforge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PATHFORGE_ERRORS_HPP_
#define PATHFORGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pathforge {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by the supply-chain rollup when a product needed by a route has
// no producer in the supplied production mix.
class UnresolvedProduct : public std::runtime_error {
 public:
  explicit UnresolvedProduct(std::string product)
      : std::runtime_error("unresolved product '" + product +
                           "': no producer in production mix"),
        product_(std::move(product)) {}
  const std::string& product() const { return product_; }

 private:
  std::string product_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pathforge

#endif  // PATHFORGE_ERRORS_HPP_

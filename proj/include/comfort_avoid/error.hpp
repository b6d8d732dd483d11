// Copyright 2026 The comfort_avoid Authors
//
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

#ifndef COMFORT_AVOID__ERROR_HPP_
#define COMFORT_AVOID__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace comfort_avoid
{

// Invalid input: bad configuration, violated preconditions, malformed files.
// `path` names the offending field (e.g. "planner.weights.q_track") when known.
class ValidationError : public std::invalid_argument
{
public:
  explicit ValidationError(const std::string & message, std::string path = {})
  : std::invalid_argument(path.empty() ? message : path + ": " + message), path_(std::move(path))
  {
  }

  const std::string & path() const noexcept { return path_; }

private:
  std::string path_;
};

// Failure while computing on valid input (numerical breakdown, I/O).
class RuntimeError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__ERROR_HPP_

// mada/common.h

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MADA_COMMON_H_
#define MADA_COMMON_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mada {

using Tokens = std::vector<std::string>;

// Input content violates a contract (schema, ontology resolution, config range).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string lowercase(std::string s);

// Lowercases and splits on whitespace. All corpus text passes through this
// once at load time; every later comparison is on the normalized form.
Tokens tokenize(const std::string& text);

std::string join(const Tokens& tokens, const std::string& sep = " ");

// join(tokenize(s)): idempotent canonical text form.
std::string normalize_text(const std::string& text);

uint64_t fnv1a64(std::string_view s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Runs fn(0..n-1) on up to `jobs` threads. fn must only touch state owned by
// its own index; results are merged by the caller in index order, so the
// outcome never depends on the job count.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace mada

#endif  // MADA_COMMON_H_

// Copyright 2026 The Tempora Authors.
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

#ifndef TEMPORA_JSONL_HPP_
#define TEMPORA_JSONL_HPP_

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>

namespace tempora {

// Receives one human-readable diagnostic per call.
using LogFn = std::function<void(std::string_view)>;

// Opens a file for reading; throws IoError naming the path on failure.
std::ifstream open_input(const std::filesystem::path& path);

// Writes to a temporary sibling file and renames it over the destination
// on commit(). An uncommitted writer removes its temporary file, so the
// destination is never left partially written.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::filesystem::path destination);
  ~AtomicFileWriter();

  AtomicFileWriter(const AtomicFileWriter&) = delete;
  AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path destination_;
  std::filesystem::path temporary_;
  std::ofstream out_;
  bool committed_ = false;
};

// Strips a trailing '\r' and reports whether the line is blank.
bool normalize_line(std::string& line);

}  // namespace tempora

#endif  // TEMPORA_JSONL_HPP_

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

#include "jsonl.hpp"

#include <atomic>
#include <cctype>
#include <system_error>

#include <unistd.h>

#include "core.hpp"

namespace tempora {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path.string());
  return in;
}

AtomicFileWriter::AtomicFileWriter(std::filesystem::path destination)
    : destination_(std::move(destination)) {
  static std::atomic<unsigned> counter{0};
  temporary_ = destination_;
  temporary_ += ".tmp." + std::to_string(::getpid()) + "." +
                std::to_string(counter.fetch_add(1));
  out_.open(temporary_, std::ios::binary | std::ios::trunc);
  if (!out_) {
    throw IoError("cannot open output file: " + destination_.string());
  }
}

AtomicFileWriter::~AtomicFileWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(temporary_, ec);
  }
}

void AtomicFileWriter::commit() {
  out_.flush();
  if (!out_) throw IoError("write failed: " + destination_.string());
  out_.close();
  std::error_code ec;
  std::filesystem::rename(temporary_, destination_, ec);
  if (ec) {
    throw IoError("cannot rename output into place: " +
                  destination_.string() + ": " + ec.message());
  }
  committed_ = true;
}

bool normalize_line(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace tempora

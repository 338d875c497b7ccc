#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "travelkit/core/error.hpp"
#include "travelkit/core/records.hpp"

namespace travelkit {

// Writes content to path via a sibling temp file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Reads one record per non-blank line. Decode failures raise RecordError
// carrying the 1-based line number.
template <class T>
std::vector<T> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(decode_record<T>(line));
    } catch (const nlohmann::json::exception& e) {
      throw RecordError(path.filename().string() + ": " + e.what(), line_no);
    } catch (const RecordError& e) {
      throw RecordError(path.filename().string() + ": " + e.what(), line_no);
    }
  }
  return out;
}

template <class T>
std::string encode_jsonl(const std::vector<T>& records) {
  std::string out;
  for (const auto& r : records) {
    out += encode_record(r);
    out += '\n';
  }
  return out;
}

template <class T>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& records) {
  write_file_atomic(path, encode_jsonl(records));
}

}  // namespace travelkit

#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace entdiag {

// shortest round-trip decimal form; byte-stable across runs
std::string format_double(double v);

// minimal CSV writer with deterministic formatting and trailing newline rows
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    template <typename... Ts>
    void row(const Ts&... values) {
        std::string line;
        append_all(line, values...);
        line.push_back('\n');
        out_ << line;
        if (!out_) throw std::runtime_error("write failed: " + path_);
    }

  private:
    static void append_field(std::string& line, const std::string& v) { line += v; }
    static void append_field(std::string& line, const char* v) { line += v; }
    static void append_field(std::string& line, double v) { line += format_double(v); }
    static void append_field(std::string& line, int v) { line += std::to_string(v); }
    static void append_field(std::string& line, long v) { line += std::to_string(v); }
    static void append_field(std::string& line, unsigned long v) { line += std::to_string(v); }
    static void append_field(std::string& line, unsigned long long v) { line += std::to_string(v); }

    template <typename T, typename... Rest>
    static void append_all(std::string& line, const T& first, const Rest&... rest) {
        append_field(line, first);
        if constexpr (sizeof...(rest) > 0) {
            line.push_back(',');
            append_all(line, rest...);
        }
    }

    std::ofstream out_;
    std::string path_;
};

// 64-bit FNV-1a over a canonical (key-sorted) serialization
uint64_t fnv1a64(const std::string& data);
std::string hex64(uint64_t v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace entdiag

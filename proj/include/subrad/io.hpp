#ifndef SUBRAD_IO_HPP
#define SUBRAD_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace subrad::io {

// Deterministic shortest-ish formatting used for every CSV number.
std::string fmt(double value);

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t value);

// Write-then-rename so partially written artifacts never appear.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Collects artifacts of one CLI run and emits manifest.json with content
// hashes and the resolved configuration.
class RunWriter {
public:
    explicit RunWriter(std::filesystem::path directory);

    void add(const std::string& name, const std::string& content);
    void add_json(const std::string& name, const nlohmann::json& value);

    // Writes manifest.json; call last.
    void finish(const std::string& command, const nlohmann::json& resolved_config);

    const std::filesystem::path& directory() const { return dir_; }

private:
    struct Artifact {
        std::string name;
        std::string hash;
        size_t bytes = 0;
    };
    std::filesystem::path dir_;
    std::vector<Artifact> artifacts_;
};

class CsvBuilder {
public:
    explicit CsvBuilder(const std::vector<std::string>& header);

    CsvBuilder& cell(const std::string& v);
    CsvBuilder& cell(double v);
    CsvBuilder& cell(int v);
    void end_row();

    std::string str() const { return body_; }

private:
    std::string body_;
    bool row_open_ = false;
};

} // namespace subrad::io

#endif // SUBRAD_IO_HPP

#include "subrad/io.hpp"

#include <cstdio>
#include <fstream>

#include "subrad/types.hpp"

namespace subrad::io {

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t value) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

RunWriter::RunWriter(std::filesystem::path directory) : dir_(std::move(directory)) {
    std::filesystem::create_directories(dir_);
}

void RunWriter::add(const std::string& name, const std::string& content) {
    write_file_atomic(dir_ / name, content);
    artifacts_.push_back({name, hex64(fnv1a64(content)), content.size()});
}

void RunWriter::add_json(const std::string& name, const nlohmann::json& value) {
    add(name, value.dump(2) + "\n");
}

void RunWriter::finish(const std::string& command, const nlohmann::json& resolved_config) {
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["config"] = resolved_config;
    manifest["hash_algorithm"] = "fnv1a64";
    manifest["artifacts"] = nlohmann::json::array();
    for (const auto& a : artifacts_)
        manifest["artifacts"].push_back({{"file", a.name}, {"hash", a.hash}, {"bytes", a.bytes}});
    write_file_atomic(dir_ / "manifest.json", manifest.dump(2) + "\n");
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i)
            body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

CsvBuilder& CsvBuilder::cell(const std::string& v) {
    if (row_open_)
        body_ += ',';
    body_ += v;
    row_open_ = true;
    return *this;
}

CsvBuilder& CsvBuilder::cell(double v) { return cell(fmt(v)); }

CsvBuilder& CsvBuilder::cell(int v) { return cell(std::to_string(v)); }

void CsvBuilder::end_row() {
    body_ += '\n';
    row_open_ = false;
}

} // namespace subrad::io

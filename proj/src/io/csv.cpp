#include "telic/io/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "telic/errors.hpp"

namespace telic::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void CsvWriter::comment(const std::string& line) {
    buffer_ += "# ";
    buffer_ += line;
    buffer_ += '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw TelicError("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw TelicError("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace telic::io

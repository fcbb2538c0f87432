#pragma once

#include <string>
#include <vector>

namespace telic::io {

/// Fixed-form floating point rendering ("%.12g") so identical values always
/// produce identical bytes.
std::string format_double(double v);

/// Minimal CSV assembler: '#'-prefixed provenance comments, one header row,
/// data rows. Cells are written verbatim; numeric cells should go through
/// format_double.
class CsvWriter {
public:
    void comment(const std::string& line);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    const std::string& str() const { return buffer_; }

private:
    std::string buffer_;
};

/// Write through a temp file and rename, so partially written outputs never
/// appear under the final name.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace telic::io

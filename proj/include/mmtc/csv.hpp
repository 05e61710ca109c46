#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace mmtc::csv {

// %.12g: enough digits that distinct analysis results stay distinct, and the
// same value always prints the same bytes.
std::string format_double(double v);

class Field {
public:
    Field(double v) : text_(format_double(v)) {}
    Field(int v) : text_(std::to_string(v)) {}
    Field(std::int64_t v) : text_(std::to_string(v)) {}
    Field(std::uint64_t v) : text_(std::to_string(v)) {}
    Field(const char* v) : text_(v) {}
    Field(std::string v) : text_(std::move(v)) {}
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

class Writer {
public:
    explicit Writer(std::ostream& os) : os_(&os) {}

    void comment(std::string_view text);
    void row(std::initializer_list<Field> fields);

private:
    std::ostream* os_;
};

} // namespace mmtc::csv

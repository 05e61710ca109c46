#include "mmtc/csv.hpp"

#include <cstdio>

namespace mmtc::csv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Writer::comment(std::string_view text) {
    *os_ << "# " << text << '\n';
}

void Writer::row(std::initializer_list<Field> fields) {
    bool first = true;
    for (const Field& f : fields) {
        if (!first) *os_ << ',';
        *os_ << f.text();
        first = false;
    }
    *os_ << '\n';
}

} // namespace mmtc::csv

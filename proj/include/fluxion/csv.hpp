#pragma once

#include <cstdio>
#include <initializer_list>
#include <string>
#include <string_view>

namespace fluxion::csv {

/// 12 significant digits, locale independent.
inline std::string format_number(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// Comma-separated numeric table with one header row and LF endings.
class Writer {
public:
    explicit Writer(std::initializer_list<std::string_view> header)
    {
        bool first = true;
        for (auto h : header) {
            if (!first)
                text_ += ',';
            text_ += h;
            first = false;
        }
        text_ += '\n';
    }

    void row(std::initializer_list<double> values)
    {
        bool first = true;
        for (double v : values) {
            if (!first)
                text_ += ',';
            text_ += format_number(v);
            first = false;
        }
        text_ += '\n';
    }

    const std::string& str() const noexcept { return text_; }

private:
    std::string text_;
};

} // namespace fluxion::csv

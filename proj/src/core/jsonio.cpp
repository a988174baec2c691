#include "core/jsonio.hpp"

#include <fstream>
#include <sstream>

namespace decoy {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if(!in)
        raise(Errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if(!out)
        raise(Errc::io, "cannot write " + path);
    out << content;
    if(!out)
        raise(Errc::io, "short write to " + path);
}

json load_json(const std::string& path) {
    std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch(const json::parse_error& e) {
        // nlohmann reports a byte offset; count newlines up to it so the
        // message points at a line a human can find.
        std::size_t line = 1;
        for(std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if(text[i] == '\n')
                ++line;
        raise(Errc::parse, path + ":" + std::to_string(line) + ": " + e.what());
    }
}

void save_json(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

} // namespace decoy

#include "stpipe/oracle.hpp"

#include "stpipe/errors.hpp"
#include "stpipe/stream_io.hpp"

namespace stpipe {

ToyLexiconOracle::ToyLexiconOracle(std::map<std::string, std::string> lexicon)
    : lexicon_(std::move(lexicon)) {}

ToyLexiconOracle ToyLexiconOracle::from_file(const std::string& path) {
    const std::string content = read_file(path);
    std::map<std::string, std::string> lexicon;
    std::size_t pos = 0, line_no = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string line = content.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw DataError(path + " line " + std::to_string(line_no) +
                            ": expected `source TAB target`");
        lexicon[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return ToyLexiconOracle(std::move(lexicon));
}

std::vector<std::string> ToyLexiconOracle::generate(std::span<const std::string> source,
                                                    std::span<const std::string> forced_prefix) const {
    std::vector<std::string> out(forced_prefix.begin(), forced_prefix.end());
    for (std::size_t i = forced_prefix.size(); i < source.size(); ++i) {
        auto it = lexicon_.find(source[i]);
        out.push_back(it == lexicon_.end() ? source[i] : it->second);
    }
    return out;
}

} // namespace stpipe

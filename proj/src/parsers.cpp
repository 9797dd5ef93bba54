#include "bdp/parsers.hpp"

#include <algorithm>
#include <string>

namespace bdp {

std::string_view name_of(Algorithm a) {
    switch (a) {
        case Algorithm::lz77: return "lz77";
        case Algorithm::lz_prime: return "lzp";
        case Algorithm::lzor: return "lzor";
        case Algorithm::lex: return "lex";
        case Algorithm::lzrr: return "lzrr";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
    for (Algorithm a : {Algorithm::lz77, Algorithm::lz_prime, Algorithm::lzor, Algorithm::lex, Algorithm::lzrr}) {
        if (name_of(a) == name) return a;
    }
    return std::nullopt;
}

Parse lz77(const TextIndex& index) {
    const Text& t = index.text();
    Parse out;
    out.n = t.size();
    for (Pos s = 1; s <= out.n;) {
        const Pos len = index.lpf(s);
        if (len == 0) {
            out.phrases.push_back(Phrase::literal(t.at(s)));
            ++s;
        } else {
            out.phrases.push_back(Phrase::target(index.lpf_source(s), len));
            s += len;
        }
    }
    return out;
}

Parse lz_prime(const Text& text) {
    const FactorArray f = longest_previous_factors_ending(text);
    Parse out;
    out.n = text.size();
    // Phrases are found back to front; e is the end of the next one.
    for (Pos e = out.n; e >= 1;) {
        const Pos len = f.length[e - 1];
        if (len == 0) {
            out.phrases.push_back(Phrase::literal(text.at(e)));
            --e;
        } else {
            out.phrases.push_back(Phrase::target(f.source[e - 1] - len + 1, len));
            e -= len;
        }
    }
    std::reverse(out.phrases.begin(), out.phrases.end());
    return out;
}

Parse lzor(const Text& text) {
    const FactorArray f = longest_next_factors(text);
    Parse out;
    out.n = text.size();
    for (Pos s = 1; s <= out.n;) {
        const Pos len = f.length[s - 1];
        if (len == 0) {
            out.phrases.push_back(Phrase::literal(text.at(s)));
            ++s;
        } else {
            out.phrases.push_back(Phrase::target(f.source[s - 1], len));
            s += len;
        }
    }
    return out;
}

Parse lex_parse(const TextIndex& index) {
    const Text& t = index.text();
    Parse out;
    out.n = t.size();
    for (Pos s = 1; s <= out.n;) {
        const Pos rank = index.isa(s);
        const Pos len = rank > 1 ? index.lcp(rank) : 0;
        if (len == 0) {
            out.phrases.push_back(Phrase::literal(t.at(s)));
            ++s;
        } else {
            out.phrases.push_back(Phrase::target(index.sa(rank - 1), len));
            s += len;
        }
    }
    return out;
}

LzrrSession::LzrrSession(const TextIndex& index)
    : index_(&index), forest_(index.size()), overlay_(index.size()) {
    parse_.n = index.size();
}

Pos LzrrSession::lf(Pos j) {
    const Pos n = index_->size();
    if (j < 1 || j > n) {
        throw std::out_of_range("reference " + std::to_string(j) + " outside 1.." + std::to_string(n));
    }
    ++lf_calls_;
    const Pos i = next_;
    auto t = index_->text().bytes();
    overlay_.open(i);
    Pos len = 0;
    while (i + len <= n && j + len <= n && t[i + len - 1] == t[j + len - 1]) {
        const Pos x = i + len;
        const Pos y = j + len;
        // Extending is valid exactly when the two positions do not already
        // resolve to the same source.
        if (overlay_.source(forest_, x) == overlay_.source(forest_, y)) break;
        overlay_.unite(forest_, x, y);
        ++len;
    }
    overlay_.reset();
    return len;
}

Phrase LzrrSession::lp() {
    const Pos i = next_;
    SuffixNeighborhood around = index_->neighborhood(i);
    Pos best_ref = 0;
    Pos best_len = 0;
    while (auto nb = around.next()) {
        if (nb->lcp <= best_len) break;
        const Pos len = lf(nb->pos);
        if (len > best_len) {
            best_ref = nb->pos;
            best_len = len;
        }
    }
    if (best_len > 0) return Phrase::target(best_ref, best_len);
    return Phrase::literal(index_->text().at(i));
}

void LzrrSession::commit(const Phrase& phrase) {
    const Pos n = index_->size();
    const Pos i = next_;
    if (done() || phrase.length() > n - i + 1) throw std::invalid_argument("phrase runs past the end of the text");
    const Text& t = index_->text();
    if (phrase.is_literal()) {
        if (phrase.ch() != t.at(i)) throw std::invalid_argument("literal does not match text at " + std::to_string(i));
    } else {
        const Pos j = phrase.ref();
        if (j < 1 || j > n || index_->lcp_of(i, j) < phrase.length()) {
            throw std::invalid_argument("target <" + std::to_string(j) + ", " + std::to_string(phrase.length()) +
                                        "> does not match text at " + std::to_string(i));
        }
        for (Pos k = 0; k < phrase.length(); ++k) forest_.commit_union(i + k, j + k);
    }
    parse_.phrases.push_back(phrase);
    next_ += phrase.length();
}

Parse lzrr(const TextIndex& index) {
    LzrrSession session(index);
    while (!session.done()) session.commit(session.lp());
    return session.parse();
}

Parse lzrr(const Text& text) { return lzrr(TextIndex(text)); }

Parse run(Algorithm algorithm, const Text& text) {
    switch (algorithm) {
        case Algorithm::lz77: return lz77(TextIndex(text));
        case Algorithm::lz_prime: return lz_prime(text);
        case Algorithm::lzor: return lzor(text);
        case Algorithm::lex: return lex_parse(TextIndex(text));
        case Algorithm::lzrr: return lzrr(TextIndex(text));
    }
    throw std::invalid_argument("unknown algorithm");
}

DirectedParse best_of_reverse(const std::function<Parse(const Text&)>& algorithm, const Text& text) {
    DirectedParse forward{algorithm(text), false};
    DirectedParse backward{algorithm(text.reversed()), true};
    return backward.parse.size() < forward.parse.size() ? std::move(backward) : std::move(forward);
}

DirectedParse best_of_reverse(Algorithm algorithm, const Text& text) {
    return best_of_reverse([algorithm](const Text& t) { return run(algorithm, t); }, text);
}

}  // namespace bdp

#include "natvert/perm.hpp"

#include <algorithm>
#include <numeric>

#include "natvert/errors.hpp"

namespace natvert {

Permutation::Permutation(int degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), 0);
}

Permutation::Permutation(std::vector<int> images_zero_based)
    : img_(std::move(images_zero_based)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
        if (v < 0 || v >= int(img_.size()) || seen[v])
            throw parse_error("permutation: images are not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::parse(const std::string& text, int degree) {
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && isspace(text[i])) ++i; };
    skip_ws();
    if (i >= text.size()) throw parse_error("permutation: empty text");

    auto read_int = [&]() -> int {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && isdigit(text[i])) ++i;
        if (start == i) throw parse_error("permutation: expected a point");
        int v = std::stoi(text.substr(start, i - start));
        if (v < 1 || v > degree) throw parse_error("permutation: point out of range");
        return v - 1;
    };

    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);

    if (text[i] == '[') {
        ++i;
        std::vector<int> images;
        skip_ws();
        if (i < text.size() && text[i] == ']') { ++i; }
        else {
            while (true) {
                images.push_back(read_int());
                skip_ws();
                if (i >= text.size()) throw parse_error("permutation: unterminated list");
                if (text[i] == ',') { ++i; continue; }
                if (text[i] == ']') { ++i; break; }
                throw parse_error("permutation: bad list separator");
            }
        }
        if (int(images.size()) != degree)
            throw parse_error("permutation: image list length mismatch");
        return Permutation(std::move(images));
    }

    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != '(') throw parse_error("permutation: expected '('");
        ++i;
        skip_ws();
        if (i < text.size() && text[i] == ')') { ++i; continue; } // "()"
        std::vector<int> cyc;
        while (true) {
            cyc.push_back(read_int());
            skip_ws();
            if (i >= text.size()) throw parse_error("permutation: unterminated cycle");
            if (text[i] == ',') { ++i; continue; }
            if (text[i] == ')') { ++i; break; }
            throw parse_error("permutation: bad cycle separator");
        }
        for (std::size_t j = 0; j < cyc.size(); ++j) {
            int from = cyc[j];
            int to = cyc[(j + 1) % cyc.size()];
            if (img[from] != from && cyc.size() > 1)
                throw parse_error("permutation: repeated point in cycles");
            img[from] = to;
        }
    }
    return Permutation(std::move(img));
}

Permutation parse_perm(const std::string& text, int degree) {
    return Permutation::parse(text, degree);
}

Permutation Permutation::operator*(const Permutation& rhs) const {
    if (degree() != rhs.degree())
        throw domain_error("permutation: degree mismatch in product");
    std::vector<int> out(img_.size());
    for (std::size_t p = 0; p < img_.size(); ++p) out[p] = rhs.img_[img_[p]];
    Permutation result;
    result.img_ = std::move(out);
    return result;
}

Permutation Permutation::inverse() const {
    std::vector<int> out(img_.size());
    for (std::size_t p = 0; p < img_.size(); ++p) out[img_[p]] = int(p);
    Permutation result;
    result.img_ = std::move(out);
    return result;
}

Permutation Permutation::conj_by(const Permutation& h) const {
    return h.inverse() * (*this) * h;
}

bool Permutation::is_identity() const {
    for (std::size_t p = 0; p < img_.size(); ++p)
        if (img_[p] != int(p)) return false;
    return true;
}

bool Permutation::is_even() const {
    std::vector<char> seen(img_.size(), 0);
    int transpositions = 0;
    for (std::size_t p = 0; p < img_.size(); ++p) {
        if (seen[p]) continue;
        int len = 0;
        for (int q = int(p); !seen[q]; q = img_[q]) {
            seen[q] = 1;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

unsigned long long Permutation::order() const {
    unsigned long long ord = 1;
    for (int len : cycle_type()) ord = std::lcm<unsigned long long>(ord, len);
    return ord;
}

std::vector<int> Permutation::fixed_points() const {
    std::vector<int> out;
    for (std::size_t p = 0; p < img_.size(); ++p)
        if (img_[p] == int(p)) out.push_back(int(p));
    return out;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (std::size_t p = 0; p < img_.size(); ++p) {
        if (seen[p] || img_[p] == int(p)) continue;
        std::vector<int> cyc;
        for (int q = int(p); !seen[q]; q = img_[q]) {
            seen[q] = 1;
            cyc.push_back(q);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

std::vector<int> Permutation::cycle_type() const {
    std::vector<char> seen(img_.size(), 0);
    std::vector<int> lens;
    for (std::size_t p = 0; p < img_.size(); ++p) {
        if (seen[p]) continue;
        int len = 0;
        for (int q = int(p); !seen[q]; q = img_[q]) {
            seen[q] = 1;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

Permutation Permutation::extended(int new_degree) const {
    if (new_degree < degree())
        throw domain_error("permutation: cannot shrink degree");
    std::vector<int> out(new_degree);
    std::iota(out.begin(), out.end(), 0);
    std::copy(img_.begin(), img_.end(), out.begin());
    Permutation result;
    result.img_ = std::move(out);
    return result;
}

std::string Permutation::to_cycle_string() const {
    auto cyc = cycles();
    if (cyc.empty()) return "()";
    std::string out;
    for (const auto& c : cyc) {
        out += "(";
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j) out += ",";
            out += std::to_string(c[j] + 1);
        }
        out += ")";
    }
    return out;
}

} // namespace natvert

#include "wccmine/item.hpp"

#include <algorithm>
#include <cctype>

#include "wccmine/errors.hpp"

namespace wccmine {

namespace {

// Field separator used by canonical_encode. Item names cannot contain it
// because the constructor rejects control characters.
constexpr char kNameSep = '\x1f';

std::string_view trim(std::string_view s) {
    const auto* first = s.begin();
    const auto* last = s.end();
    while (first != last && std::isspace(static_cast<unsigned char>(*first)))
        ++first;
    while (last != first && std::isspace(static_cast<unsigned char>(last[-1])))
        --last;
    return {first, static_cast<std::size_t>(last - first)};
}

char namespace_tag(Namespace ns) {
    switch (ns) {
    case Namespace::Issue: return 'i';
    case Namespace::Tech: return 't';
    case Namespace::Generic: return 'g';
    }
    throw UsageError("invalid namespace value");
}

Namespace namespace_from_tag(char tag) {
    switch (tag) {
    case 'i': return Namespace::Issue;
    case 't': return Namespace::Tech;
    case 'g': return Namespace::Generic;
    default: throw DataError("canonical_decode: unknown namespace tag");
    }
}

} // namespace

std::string_view to_string(Namespace ns) {
    switch (ns) {
    case Namespace::Issue: return "issue";
    case Namespace::Tech: return "tech";
    case Namespace::Generic: return "generic";
    }
    throw UsageError("invalid namespace value");
}

Namespace namespace_from_string(std::string_view s) {
    if (s == "issue") return Namespace::Issue;
    if (s == "tech") return Namespace::Tech;
    if (s == "generic") return Namespace::Generic;
    throw DataError("unknown namespace '" + std::string(s) + "'");
}

Item::Item(Namespace ns, std::string_view name) : ns_(ns), name_(trim(name)) {
    if (name_.empty())
        throw DataError("empty item name");
    for (unsigned char c : name_)
        if (c < 0x20 || c == 0x7f)
            throw DataError("item name '" + name_ +
                            "' contains a control character");
}

ItemSet::ItemSet(std::vector<Item> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    for (const Item& item : items_)
        if (item.ns() != items_.front().ns())
            throw DataError("itemset mixes namespaces");
}

ItemSet::ItemSet(std::initializer_list<Item> items)
    : ItemSet(std::vector<Item>(items)) {}

ItemSet ItemSet::from_canonical(std::vector<Item> items) {
    ItemSet s;
    s.items_ = std::move(items);
    return s;
}

Namespace ItemSet::ns() const {
    if (items_.empty())
        throw UsageError("namespace of an empty itemset");
    return items_.front().ns();
}

bool ItemSet::contains(const Item& item) const {
    return std::binary_search(items_.begin(), items_.end(), item);
}

bool ItemSet::contains_all(const ItemSet& other) const {
    return std::includes(items_.begin(), items_.end(), other.items_.begin(),
                         other.items_.end());
}

bool ItemSet::disjoint_with(const ItemSet& other) const {
    auto it = items_.begin();
    auto jt = other.items_.begin();
    while (it != items_.end() && jt != other.items_.end()) {
        if (*it < *jt)
            ++it;
        else if (*jt < *it)
            ++jt;
        else
            return false;
    }
    return true;
}

ItemSet ItemSet::united_with(const ItemSet& other) const {
    std::vector<Item> merged;
    merged.reserve(items_.size() + other.items_.size());
    std::set_union(items_.begin(), items_.end(), other.items_.begin(),
                   other.items_.end(), std::back_inserter(merged));
    return from_canonical(std::move(merged));
}

std::string canonical_encode(const ItemSet& s) {
    if (s.empty())
        throw DataError("cannot encode an empty itemset");
    std::string key(1, namespace_tag(s.ns()));
    for (const Item& item : s) {
        key += kNameSep;
        key += item.name();
    }
    return key;
}

ItemSet canonical_decode(std::string_view key) {
    if (key.size() < 2 || key[1] != kNameSep)
        throw DataError("canonical_decode: malformed key");
    const Namespace ns = namespace_from_tag(key[0]);
    std::vector<Item> items;
    std::string_view rest = key.substr(2);
    while (true) {
        const std::size_t pos = rest.find(kNameSep);
        items.emplace_back(ns, rest.substr(0, pos));
        if (pos == std::string_view::npos)
            break;
        rest = rest.substr(pos + 1);
    }
    return ItemSet::from_canonical(std::move(items));
}

} // namespace wccmine

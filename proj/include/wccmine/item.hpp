#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace wccmine {

// Items live in one of two survey namespaces. Generic covers databases
// whose transactions are plain item sets with no antecedent/consequent
// distinction.
enum class Namespace : std::uint8_t { Issue = 0, Tech = 1, Generic = 2 };

std::string_view to_string(Namespace ns);
Namespace namespace_from_string(std::string_view s);

// A single answer choice. Names are whitespace-trimmed on construction,
// compared case-sensitively, and must be non-empty and free of control
// characters.
class Item {
public:
    Item(Namespace ns, std::string_view name);

    Namespace ns() const { return ns_; }
    const std::string& name() const { return name_; }

    auto operator<=>(const Item&) const = default;
    bool operator==(const Item&) const = default;

private:
    Namespace ns_;
    std::string name_;
};

// A set of items from a single namespace, kept in canonical order
// (namespace, then lexicographic name) with duplicates removed.
class ItemSet {
public:
    ItemSet() = default;
    explicit ItemSet(std::vector<Item> items);
    ItemSet(std::initializer_list<Item> items);

    // Caller guarantees the vector is already sorted, unique, and from a
    // single namespace. Used by the enumeration hot path.
    static ItemSet from_canonical(std::vector<Item> items);

    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }
    const std::vector<Item>& items() const { return items_; }

    // Namespace of the elements; requires a non-empty set.
    Namespace ns() const;

    bool contains(const Item& item) const;
    bool contains_all(const ItemSet& other) const;
    bool disjoint_with(const ItemSet& other) const;
    ItemSet united_with(const ItemSet& other) const;

    auto operator<=>(const ItemSet&) const = default;
    bool operator==(const ItemSet&) const = default;

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::vector<Item> items_;
};

// Injective string key for a non-empty itemset, stable across element
// insertion order. canonical_decode inverts it exactly.
std::string canonical_encode(const ItemSet& s);
ItemSet canonical_decode(std::string_view key);

} // namespace wccmine

// Copyright 2026 The splitrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <concepts>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <typeindex>
#include <typeinfo>
#include <vector>

namespace splitrt {

/// Byte size of a value as accounted by the runtime. Types opt in through a
/// `size_bytes()` member; trivially copyable values and vectors of them are
/// sized directly.
template <class T>
std::size_t payload_size(const T& value) {
  if constexpr (requires { { value.size_bytes() } -> std::convertible_to<std::size_t>; }) {
    return value.size_bytes();
  } else if constexpr (std::is_trivially_copyable_v<T>) {
    return sizeof(T);
  } else if constexpr (requires { typename T::value_type; value.size(); }) {
    static_assert(std::is_trivially_copyable_v<typename T::value_type>,
                  "payload_size: provide size_bytes() for this type");
    return value.size() * sizeof(typename T::value_type);
  } else {
    static_assert(sizeof(T) == 0, "payload_size: provide size_bytes() for this type");
  }
}

class PayloadTypeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Immutable, type-erased value held in a worker store. Copies share the
/// underlying object; since it is never mutated this behaves as a value.
class Payload {
 public:
  Payload() = default;

  template <class T>
  static Payload make(T value) {
    Payload p;
    p.size_bytes_ = payload_size(value);
    p.type_ = std::type_index(typeid(T));
    p.data_ = std::make_shared<const T>(std::move(value));
    return p;
  }

  template <class T>
  const T& as() const {
    if (!data_) throw PayloadTypeError("Payload::as: empty payload");
    if (type_ != std::type_index(typeid(T))) {
      throw PayloadTypeError(std::string("Payload::as: holds ") + type_.name() +
                             ", requested " + typeid(T).name());
    }
    return *static_cast<const T*>(data_.get());
  }

  template <class T>
  bool holds() const noexcept {
    return data_ && type_ == std::type_index(typeid(T));
  }

  bool empty() const noexcept { return !data_; }
  std::size_t size_bytes() const noexcept { return size_bytes_; }

 private:
  std::shared_ptr<const void> data_;
  std::type_index type_ = std::type_index(typeid(void));
  std::size_t size_bytes_ = 0;
};

}  // namespace splitrt

#    Copyright 2026 Genesis Corporation.
#
#    All Rights Reserved.
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.

from __future__ import annotations

import random

import pytest

from gcl_v2g.codec import doc
from gcl_v2g.codec import exceptions as codec_exc


class TestDocNode:
    def test_empty_text_is_no_text(self):
        assert doc.DocNode("a", text="") == doc.DocNode("a")

    def test_text_and_children(self):
        with pytest.raises(codec_exc.InvalidDocNode):
            doc.DocNode("a", text="1", children=(doc.DocNode("b"),))

    def test_duplicate_attribute(self):
        with pytest.raises(codec_exc.InvalidDocNode):
            doc.DocNode("a", attributes=(("k", "1"), ("k", "2")))

    @pytest.mark.parametrize("name", ["", "a b", "a\n"])
    def test_bad_name(self, name):
        with pytest.raises(codec_exc.InvalidDocNode):
            doc.DocNode(name)

    def test_child_lookup(self):
        node = doc.DocNode("a", children=(doc.DocNode("b", text="1"),))

        assert node.child("b").text == "1"
        assert node.child("c") is None


class TestToXmlText:
    def test_empty_element(self):
        assert doc.to_xml_text(doc.DocNode("a")) == "<a/>"

    def test_escaping(self):
        assert doc.to_xml_text(doc.DocNode("a", text="1<2")) == "<a>1&lt;2</a>"

    def test_attributes_in_stored_order(self):
        node = doc.DocNode("a", attributes=(("z", "1"), ("b", '"')))

        assert doc.to_xml_text(node) == '<a z="1" b="&quot;"/>'

    def test_nested(self):
        node = doc.DocNode(
            "a", children=(doc.DocNode("b"), doc.DocNode("c", text="x"))
        )

        assert doc.to_xml_text(node) == "<a><b/><c>x</c></a>"


class TestParseXmlText:
    def test_child(self):
        assert doc.parse_xml_text("<a><b/></a>") == doc.DocNode(
            "a", children=(doc.DocNode("b"),)
        )

    def test_insignificant_whitespace(self):
        assert doc.parse_xml_text("<a>\n  <b>1</b>\n</a>\n") == doc.DocNode(
            "a", children=(doc.DocNode("b", text="1"),)
        )

    def test_unbalanced(self):
        with pytest.raises(codec_exc.MalformedXml):
            doc.parse_xml_text("<a><b></a>")

    def test_bad_escape(self):
        with pytest.raises(codec_exc.MalformedXml):
            doc.parse_xml_text("<a>&bogus;</a>")

    def test_mixed_content(self):
        with pytest.raises(codec_exc.MalformedXml):
            doc.parse_xml_text("<a>text<b/></a>")

    @pytest.mark.parametrize("text", ["", "  \n"])
    def test_empty(self, text):
        with pytest.raises(codec_exc.EmptyInput):
            doc.parse_xml_text(text)

    def test_round_trip(self, tree_factory):
        rng = random.Random(5)
        for _ in range(10_000):
            tree = tree_factory(rng)
            text = doc.to_xml_text(tree)

            assert doc.parse_xml_text(text) == tree
            assert doc.to_xml_text(doc.parse_xml_text(text)) == text

import itertools
import random

from django.test import SimpleTestCase

from algebra.groups import get_suite
from core.exceptions import ArgumentError, PolicySyntaxError, ThresholdError
from policy.generators import (layered_policy, random_policy,
                               sample_satisfying, sample_unsatisfying)
from policy.grammar import parse_policy
from policy.partition import (LevelDescriptor, partition_levels,
                              rebuild_tree)
from policy.shares import Polynomial, lagrange_coeff
from policy.tree import parse_attributes, policy_to_text, satisfies


class ParsePolicyTests(SimpleTestCase):

    def test_single_attribute_is_wrapped(self):
        tree = parse_policy('a')
        self.assertEqual(tree.depth, 1)
        self.assertEqual(tree.root.threshold, 1)
        self.assertEqual(len(tree.root.children), 1)
        self.assertEqual(tree.root.children[0].attribute, 'a')

    def test_parenthesized_attribute(self):
        self.assertEqual(parse_policy('(a)'), parse_policy('a'))

    def test_and_gate(self):
        tree = parse_policy('(a AND b)')
        self.assertEqual(tree.depth, 2)
        self.assertEqual(tree.root.threshold, 2)
        self.assertEqual([c.attribute for c in tree.root.children],
                         ['a', 'b'])

    def test_or_gate(self):
        tree = parse_policy('(a OR b OR c)')
        self.assertEqual(tree.root.threshold, 1)
        self.assertEqual(len(tree.root.children), 3)

    def test_threshold_gate(self):
        tree = parse_policy('(2 of (a, b, (c AND d)))')
        self.assertEqual(tree.depth, 3)
        self.assertEqual(tree.root.threshold, 2)
        nested = tree.root.children[2]
        self.assertEqual(nested.depth, 2)
        self.assertEqual(nested.threshold, 2)
        self.assertEqual(nested.index, 3)

    def test_document_order_ids_and_indices(self):
        tree = parse_policy('(a AND (b OR c))')
        ids = [node.node_id for node in tree.nodes()]
        self.assertEqual(ids, [1, 2, 3, 4, 5])
        self.assertEqual(len(tree.nodes()), 5)
        self.assertEqual(tree.nodes(), tree.nodes())
        self.assertEqual([c.index for c in tree.root.children], [1, 2])

    def test_numeric_attribute(self):
        tree = parse_policy('(2 AND b)')
        self.assertEqual(tree.root.children[0].attribute, '2')

    def test_duplicate_attributes_allowed(self):
        tree = parse_policy('(a OR (a AND b))')
        self.assertEqual(len(tree.leaves()), 3)

    def test_syntax_error_has_position(self):
        with self.assertRaises(PolicySyntaxError) as ctx:
            parse_policy('(a AND b')
        self.assertIsNotNone(ctx.exception.position)
        with self.assertRaises(PolicySyntaxError):
            parse_policy('a AND b')
        with self.assertRaises(PolicySyntaxError):
            parse_policy('(a AND b OR c)')

    def test_keywords_are_case_sensitive(self):
        for text in ('(a and b)', '(a Or b)', '(2 OF (a, b))'):
            with self.subTest(text=text):
                with self.assertRaises(PolicySyntaxError):
                    parse_policy(text)
        self.assertEqual(parse_policy('(2 of (a, b))').root.threshold, 2)

    def test_threshold_out_of_range(self):
        with self.assertRaises(ThresholdError):
            parse_policy('(3 of (a, b))')
        with self.assertRaises(ThresholdError):
            parse_policy('(0 of (a, b))')

    def test_print_parse_fixpoint(self):
        rng = random.Random(5)
        texts = ['a', '(a AND b)', '(1 of (a))', '(2 of (a, b, (c AND d)))']
        texts += [random_policy(rng) for _ in range(50)]
        for text in texts:
            tree = parse_policy(text)
            self.assertEqual(parse_policy(policy_to_text(tree)), tree)


class SatisfiesTests(SimpleTestCase):

    def test_and(self):
        tree = parse_policy('(a AND b)')
        self.assertTrue(satisfies(tree, {'a', 'b'}))
        self.assertFalse(satisfies(tree, {'a'}))

    def test_threshold_brute_force(self):
        tree = parse_policy('(2 of (a, b, c))')
        for size in range(4):
            for subset in itertools.combinations('abc', size):
                self.assertEqual(satisfies(tree, set(subset)), size >= 2)

    def test_monotone(self):
        rng = random.Random(9)
        for _ in range(30):
            tree = parse_policy(random_policy(rng, max_depth=4,
                                              max_leaves=8))
            attrs = sorted(tree.attributes())
            for size in range(len(attrs) + 1):
                subset = set(rng.sample(attrs, size))
                if satisfies(tree, subset):
                    self.assertTrue(satisfies(tree, set(attrs)))
                    extra = subset | set(rng.sample(attrs, len(attrs) // 2))
                    self.assertTrue(satisfies(tree, extra))

    def test_samplers(self):
        rng = random.Random(2)
        for _ in range(30):
            tree = parse_policy(random_policy(rng))
            self.assertTrue(satisfies(tree, sample_satisfying(tree, rng)))
            self.assertFalse(satisfies(tree, sample_unsatisfying(tree, rng)))

    def test_parse_attributes(self):
        self.assertEqual(parse_attributes('a, b,c'), {'a', 'b', 'c'})
        with self.assertRaises(ArgumentError):
            parse_attributes(' , ')


class PartitionTests(SimpleTestCase):

    def test_depth_one(self):
        partition = partition_levels(parse_policy('a'))
        self.assertEqual(len(partition), 1)
        level = partition.slice(1)
        self.assertEqual(len(level.interior_nodes), 1)
        self.assertEqual([n.attribute for n in level.leaf_nodes], ['a'])

    def test_levels_by_depth(self):
        partition = partition_levels(parse_policy('(a AND (b OR c))'))
        self.assertEqual(len(partition), 3)
        first, second, third = partition
        self.assertEqual([n.node_id for n in first.interior_nodes], [1])
        self.assertEqual(first.leaf_nodes, ())
        self.assertEqual([n.attribute for n in second.leaf_nodes], ['a'])
        self.assertEqual([n.threshold for n in second.interior_nodes], [1])
        self.assertEqual([n.attribute for n in third.leaf_nodes], ['b', 'c'])
        self.assertEqual(third.interior_nodes, ())

    def test_benchmark_shape(self):
        tree = parse_policy(layered_policy(10, 100))
        partition = partition_levels(tree)
        self.assertEqual(len(partition), 10)
        self.assertEqual(
            sum(len(level.leaf_nodes) for level in partition), 100)

    def test_completeness_and_rebuild(self):
        rng = random.Random(4)
        for _ in range(30):
            tree = parse_policy(random_policy(rng))
            partition = partition_levels(tree)
            seen = [node.node_id for level in partition
                    for node in level.interior_nodes + level.leaf_nodes]
            self.assertEqual(sorted(seen),
                             sorted(node.node_id for node in tree.nodes()))
            self.assertEqual(len(seen), len(set(seen)))
            self.assertEqual(len(partition.slice(1).interior_nodes), 1)
            descriptors = [level.descriptor for level in partition]
            self.assertEqual(rebuild_tree(descriptors), tree)

    def test_descriptor_round_trip(self):
        tree = parse_policy('(2 of (a, b, (c AND d)))')
        for level in partition_levels(tree):
            descriptor = level.descriptor
            self.assertEqual(
                LevelDescriptor.from_bytes(descriptor.to_bytes()), descriptor)


class LagrangeTests(SimpleTestCase):

    def setUp(self):
        self.p = get_suite().order

    def test_singleton(self):
        self.assertEqual(lagrange_coeff(1, {1}, 17, self.p), 1)

    def test_two_points(self):
        self.assertEqual(lagrange_coeff(1, {1, 2}, 0, self.p), 2)

    def test_linear_interpolation(self):
        poly = Polynomial([get_suite().scalar(7), get_suite().scalar(3)])
        total = sum(
            (poly(i) * lagrange_coeff(i, {1, 2, 3}, 0, self.p)
             for i in (1, 2, 3)),
            get_suite().scalar(0),
        )
        self.assertEqual(total, 7)

    def test_random_interpolation(self):
        rng = random.Random(8)
        for degree in range(6):
            poly = Polynomial.random(rng.randrange(self.p), degree, rng,
                                     self.p)
            points = rng.sample(range(1, 20), degree + 1)
            total = get_suite().scalar(0)
            for i in points:
                total = total + poly(i) * lagrange_coeff(i, points, 0, self.p)
            self.assertEqual(total, poly(0))

    def test_index_outside_set(self):
        with self.assertRaises(ArgumentError):
            lagrange_coeff(3, {1, 2}, 0, self.p)

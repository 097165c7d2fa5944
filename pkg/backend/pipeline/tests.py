import csv
import os
import random
import tempfile
import time
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings, tag

from core.constants import BENCH_COLUMNS, SCHEDULE_COLUMNS, ExitCode
from core.exceptions import ArgumentError, PipelineError
from pipeline.bench import run_benchmark
from pipeline.executor import run_pipeline
from pipeline.link import LinkModel
from pipeline.simulation import simulate
from pipeline.timing import (Side, StageTimes, approximate_total, delta_t,
                             pipelined_total, pipelined_total_dec,
                             pipelined_total_enc, sequential_total_dec,
                             sequential_total_enc)

MIB = 1 << 20
# medians of measured stage times still jitter between neighbouring sizes
TREND_TOLERANCE = 0.1


def random_times(rng, n):
    return StageTimes(
        et=[rng.uniform(0, 2) for _ in range(n)],
        tt=[rng.uniform(0, 2) for _ in range(n)],
        dt=[rng.uniform(0, 2) for _ in range(n)],
    )


class StageTimesTests(SimpleTestCase):

    def test_validation(self):
        with self.assertRaises(ArgumentError):
            StageTimes(et=[1, 2], tt=[1])
        with self.assertRaises(ArgumentError):
            StageTimes(et=[-1], tt=[1])
        with self.assertRaises(ArgumentError):
            StageTimes(et=[], tt=[])

    def test_missing_decryption_times(self):
        times = StageTimes(et=[1, 1], tt=[2, 2])
        self.assertEqual(times.dt, (0, 0))
        self.assertEqual(times.n, 2)


class SequentialTotalTests(SimpleTestCase):

    def test_sums(self):
        self.assertEqual(
            sequential_total_enc(StageTimes.uniform(4, 1, 2)), 12)
        self.assertEqual(sequential_total_enc(StageTimes(et=[5], tt=[3])), 8)
        self.assertEqual(sequential_total_enc(StageTimes.uniform(3, 0, 0)),
                         0)
        self.assertEqual(
            sequential_total_dec(StageTimes.uniform(4, 0, 2, 1)), 12)


class RecurrenceTests(SimpleTestCase):

    def test_transmission_dominates_encryption(self):
        result = pipelined_total_enc(StageTimes.uniform(4, 1, 2))
        self.assertEqual(result.total_pipelined, 9)
        self.assertEqual(result.total_sequential, 12)
        self.assertEqual(result.delta_t, 3)

    def test_encryption_dominates_transmission(self):
        result = pipelined_total_enc(StageTimes.uniform(3, 2, 1))
        self.assertEqual(result.total_pipelined, 7)
        self.assertEqual(result.delta_t, 2)

    def test_single_block(self):
        result = pipelined_total_enc(StageTimes(et=[5], tt=[3]))
        self.assertEqual(result.total_pipelined, 8)
        self.assertEqual(result.delta_t, 0)

    def test_decryption_side(self):
        self.assertEqual(pipelined_total_dec(
            StageTimes.uniform(4, 0, 2, 1)).total_pipelined, 9)
        self.assertEqual(pipelined_total_dec(
            StageTimes.uniform(3, 0, 1, 2)).total_pipelined, 7)
        self.assertEqual(pipelined_total_dec(
            StageTimes.uniform(5, 0, 3, 0)).total_pipelined, 15)

    def test_schedule_instants(self):
        result = pipelined_total_enc(StageTimes(et=[1, 1], tt=[2, 2]))
        first, second = result.blocks
        self.assertEqual((first.enc_start, first.enc_end), (0, 1))
        self.assertEqual((first.tx_start, first.tx_end), (1, 3))
        self.assertEqual((second.enc_start, second.enc_end), (1, 2))
        self.assertEqual((second.tx_start, second.tx_end), (3, 5))
        self.assertIsNone(first.dec_start)

    def test_closed_forms_for_uniform_times(self):
        for n in range(1, 33):
            for et, tt in ((1, 2), (2, 1), (3, 3)):
                times = StageTimes.uniform(n, et, tt, et)
                with self.subTest(n=n, et=et, tt=tt):
                    for side in Side:
                        self.assertEqual(
                            pipelined_total(times, side).total_pipelined,
                            approximate_total(times, side))
                    if tt >= et:
                        self.assertEqual(delta_t(times, Side.ENC),
                                         times.et_total - times.et[0])
                        self.assertEqual(delta_t(times, Side.DEC),
                                         times.dt_total - times.dt[-1])
                    else:
                        self.assertEqual(delta_t(times, Side.ENC),
                                         times.tt_total - times.tt[-1])
                        self.assertEqual(delta_t(times, Side.DEC),
                                         times.tt_total - times.tt[0])
                    if n >= 2:
                        self.assertGreater(delta_t(times, Side.ENC), 0)
                        self.assertGreater(delta_t(times, Side.DEC), 0)

    def test_pipelined_never_exceeds_sequential(self):
        rng = random.Random(1)
        for _ in range(200):
            times = random_times(rng, rng.randint(1, 20))
            for side in Side:
                self.assertGreaterEqual(delta_t(times, side), -1e-9)

    def test_idle_stage_gives_no_advantage(self):
        times = StageTimes.uniform(6, 0, 2)
        self.assertEqual(delta_t(times, Side.ENC), 0)

    def test_monotone_in_every_duration(self):
        rng = random.Random(2)
        for _ in range(100):
            times = random_times(rng, rng.randint(1, 12))
            base = pipelined_total_enc(times).total_pipelined
            position = rng.randrange(times.n)
            et, tt = list(times.et), list(times.tt)
            if rng.random() < 0.5:
                et[position] += rng.uniform(0, 1)
            else:
                tt[position] += rng.uniform(0, 1)
            bumped = StageTimes(et=et, tt=tt)
            self.assertGreaterEqual(
                pipelined_total_enc(bumped).total_pipelined, base)

    def test_schedule_csv(self):
        result = pipelined_total_enc(StageTimes.uniform(3, 1, 2))
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'schedule.csv')
            result.export_csv(path)
            with open(path, encoding='utf-8') as f:
                rows = list(csv.reader(f))
        self.assertEqual(tuple(rows[0]), SCHEDULE_COLUMNS)
        self.assertEqual(len(rows), 4)
        self.assertEqual(rows[3][:5], ['3', '2', '3', '5', '7'])


class SimulationTests(SimpleTestCase):

    def test_matches_recurrence_exactly(self):
        rng = random.Random(3)
        for _ in range(50):
            times = random_times(rng, rng.randint(1, 25))
            for side in Side:
                self.assertEqual(simulate(times, side),
                                 pipelined_total(times, side))

    def test_examples(self):
        self.assertEqual(
            simulate(StageTimes.uniform(4, 1, 2), 'enc').total_pipelined, 9)
        self.assertEqual(
            simulate(StageTimes.uniform(3, 0, 1, 2), 'dec').total_pipelined,
            7)


class LinkModelTests(SimpleTestCase):

    def test_transfer_time(self):
        link = LinkModel(bandwidth=1000, latency=0.5)
        self.assertEqual(link.transfer_time(2000), 2.5)

    def test_invalid(self):
        with self.assertRaises(ArgumentError):
            LinkModel(bandwidth=0)
        with self.assertRaises(ArgumentError):
            LinkModel(bandwidth=1, latency=-1)

    def test_jitter_is_seeded(self):
        first = LinkModel(bandwidth=100, jitter=1, seed=7)
        second = LinkModel(bandwidth=100, jitter=1, seed=7)
        self.assertEqual([first.transfer_time(10) for _ in range(5)],
                         [second.transfer_time(10) for _ in range(5)])

    @override_settings(LINK_BANDWIDTH=123, LINK_LATENCY=0.25)
    def test_from_settings(self):
        link = LinkModel.from_settings()
        self.assertEqual((link.bandwidth, link.latency), (123, 0.25))
        self.assertEqual(LinkModel.from_settings(bandwidth=5).bandwidth, 5)


def sleeping_worker(seconds):
    def worker(item):
        time.sleep(seconds)
        return item
    return worker


class ExecutorTests(SimpleTestCase):
    payloads = [bytes(1000)] * 8

    def test_serial_mode_matches_sequential_total(self):
        link = LinkModel(bandwidth=1000 / 0.02)
        run = run_pipeline(self.payloads, link, Side.ENC,
                           worker=sleeping_worker(0.01), overlap=False)
        sequential = run.schedule.total_sequential
        self.assertLess(abs(run.elapsed - sequential) / sequential, 0.05)

    def test_overlap_is_faster_than_serial(self):
        link = LinkModel(bandwidth=1000 / 0.02)
        serial = run_pipeline(self.payloads, link, Side.ENC,
                              worker=sleeping_worker(0.01), overlap=False)
        overlapped = run_pipeline(self.payloads, link, Side.ENC,
                                  worker=sleeping_worker(0.01))
        self.assertLess(overlapped.elapsed, serial.elapsed)

    def test_throttled_link_follows_closed_form(self):
        link = LinkModel(bandwidth=1000 / 0.05)
        run = run_pipeline(self.payloads, link, Side.ENC,
                           worker=sleeping_worker(0.005))
        expected = run.times.et[0] + run.times.tt_total
        self.assertLess(abs(run.elapsed - expected) / expected, 0.10)
        self.assertLess(
            abs(run.elapsed - run.predicted().total_pipelined) / expected,
            0.10)

    def test_sink_sees_blocks_in_order(self):
        seen = []
        run = run_pipeline(
            [bytes([index]) for index in range(1, 6)],
            LinkModel(bandwidth=1 << 30), Side.ENC,
            worker=lambda item: item * 3,
            sink=lambda index, payload: seen.append((index, payload)),
            queue_size=2,
        )
        self.assertEqual([index for index, _ in seen], [1, 2, 3, 4, 5])
        self.assertEqual(run.outputs[2], b'\x03\x03\x03')
        self.assertEqual([block.block for block in run.schedule.blocks],
                         [1, 2, 3, 4, 5])

    def test_decryption_side(self):
        received = []
        run = run_pipeline(self.payloads[:3], LinkModel(bandwidth=1 << 30),
                           Side.DEC, worker=received.append)
        self.assertEqual(len(received), 3)
        self.assertEqual(run.times.et, (0.0, 0.0, 0.0))
        self.assertIsNotNone(run.schedule.blocks[0].dec_end)

    def test_stage_failure_reports_block(self):
        def worker(item):
            if item == b'\x03':
                raise ValueError('broken block')
            return item

        items = [bytes([index]) for index in range(1, 6)]
        for overlap in (True, False):
            with self.subTest(overlap=overlap):
                with self.assertRaises(PipelineError) as ctx:
                    run_pipeline(items, LinkModel(bandwidth=1 << 30),
                                 Side.ENC, worker=worker, overlap=overlap)
                self.assertEqual(ctx.exception.block_index, 3)

    def test_second_stage_failure(self):
        def sink(index, payload):
            if index == 2:
                raise OSError('disk full')

        with self.assertRaises(PipelineError) as ctx:
            run_pipeline(self.payloads, LinkModel(bandwidth=1 << 30),
                         Side.ENC, worker=bytes, sink=sink)
        self.assertEqual(ctx.exception.block_index, 2)

    def test_no_blocks(self):
        with self.assertRaises(ArgumentError):
            run_pipeline([], LinkModel(bandwidth=1), Side.ENC, worker=bytes)


class BenchTests(SimpleTestCase):

    def test_single_level_policy_has_no_advantage(self):
        report = run_benchmark([512, 1024], levels=1, leaves=1,
                               link=LinkModel(bandwidth=1 << 30),
                               rng=random.Random(5), runs=1)
        self.assertEqual([row.size for row in report.rows], [512, 1024])
        for row in report.rows:
            self.assertEqual(row.blocks, 1)
            self.assertEqual(row.enc_delta, 0)
            self.assertEqual(row.dec_delta, 0)

    def test_sizes_must_increase(self):
        report = run_benchmark([256], levels=2, leaves=2,
                               link=LinkModel(bandwidth=1 << 30),
                               rng=random.Random(6), runs=1)
        with self.assertRaises(ArgumentError):
            type(report)(rows=report.rows * 2)

    def test_command_writes_csv_and_data_file(self):
        with tempfile.TemporaryDirectory() as directory:
            out_csv = os.path.join(directory, 'bench.csv')
            out = StringIO()
            call_command('bench', sizes='0.001,0.002', levels=3, leaves=4,
                         runs=1, bandwidth=1 << 30, out_csv=out_csv,
                         stdout=out)
            with open(out_csv, encoding='utf-8') as f:
                rows = list(csv.DictReader(f))
            with open(os.path.join(directory, 'bench.dat'),
                      encoding='utf-8') as f:
                header = f.readline()
        self.assertEqual(len(rows), 2)
        self.assertEqual(tuple(rows[0]), BENCH_COLUMNS)
        self.assertTrue(all(row['blocks'] == '3' for row in rows))
        self.assertTrue(header.startswith('# size blocks'))
        self.assertEqual(len(out.getvalue().splitlines()), 2)

    def test_bad_sizes(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('bench', sizes='a,b', stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, ExitCode.FORMAT)

    @tag('slow')
    def test_throttled_sweep_trend(self):
        report = run_benchmark(
            [size * MIB for size in (1, 2, 4, 8, 16)], levels=10,
            leaves=100, link=LinkModel(bandwidth=4 * MIB),
            rng=random.Random(7), runs=5)
        for row in report.rows:
            self.assertEqual(row.blocks, 10)
            self.assertGreater(row.enc_delta, 0)
            self.assertGreater(row.dec_delta, 0)
            self.assertLess(row.enc_pipelined, row.enc_sequential)
            self.assertLess(row.dec_pipelined, row.dec_sequential)
        for previous, current in zip(report.rows, report.rows[1:]):
            with self.subTest(size=current.size):
                self.assertGreaterEqual(
                    current.enc_delta,
                    previous.enc_delta * (1 - TREND_TOLERANCE))
        self.assertGreater(report.rows[-1].enc_delta,
                           report.rows[0].enc_delta)

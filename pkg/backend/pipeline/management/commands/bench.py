import logging

from core.commands import RoleCommand
from core.exceptions import ArgumentError
from pipeline.bench import run_benchmark
from pipeline.link import LinkModel

logger = logging.getLogger(__name__)

MIB = 1 << 20


def parse_sizes(text):
    try:
        sizes = [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ArgumentError(f'bad size list {text!r}') from None
    if not sizes or any(size <= 0 for size in sizes):
        raise ArgumentError('sizes must be positive MiB values')
    return sorted({int(size * MIB) for size in sizes})


class Command(RoleCommand):
    help = ('Сравнение последовательной и конвейерной схем '
            'по размерам сообщения')

    def add_arguments(self, parser):
        parser.add_argument('--sizes', default='1,2,4,8,16',
                            help='Размеры сообщений в МиБ через запятую')
        parser.add_argument('--levels', type=int, default=10)
        parser.add_argument('--leaves', type=int, default=100)
        parser.add_argument('--bandwidth', type=float, default=None,
                            help='Пропускная способность канала, байт/с')
        parser.add_argument('--latency', type=float, default=None)
        parser.add_argument('--runs', type=int, default=5)
        parser.add_argument('--out-csv', default='bench.csv')

    def handle_role(self, *args, **options):
        link = LinkModel.from_settings(options['bandwidth'],
                                       options['latency'])
        report = run_benchmark(
            sizes=parse_sizes(options['sizes']),
            levels=options['levels'],
            leaves=options['leaves'],
            link=link,
            rng=self.get_rng(),
            runs=options['runs'],
        )
        out_csv = options['out_csv']
        report.export_csv(out_csv)
        data_file = out_csv.rsplit('.', 1)[0] + '.dat'
        report.export_gnuplot(data_file)
        logger.info('benchmark written to %s and %s', out_csv, data_file)
        for row in report.rows:
            self.stdout.write(
                f'{row.size}\t{row.blocks}\t{row.enc_delta:.6f}\t'
                f'{row.dec_delta:.6f}')

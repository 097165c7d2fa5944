import csv


def xor_bytes(left, right):
    if len(left) != len(right):
        raise ValueError('XOR operands must have equal length')
    if not left:
        return b''
    value = int.from_bytes(left, 'big') ^ int.from_bytes(right, 'big')
    return value.to_bytes(len(left), 'big')


def preparation_csv(file, columns, rows):
    with open(file, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[column] for column in columns])


def preparation_gnuplot(file, columns, rows):
    with open(file, 'w', encoding='utf-8') as f:
        f.write('# ' + ' '.join(columns) + '\n')
        for row in rows:
            f.write(' '.join(_format_cell(row[column]) for column in columns))
            f.write('\n')


def _format_cell(value):
    if value is None:
        return '?'
    if isinstance(value, float):
        return f'{value:.6f}'
    return str(value)

"""
Spreadsheet export of result tables (bounds, formula checks, annealing traces).
"""
import logging

import openpyxl
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter

logger = logging.getLogger(__name__)

HEADER_COLOR = '2F5496'
_NUMBER_FORMAT = '0.000000000000'


def export_table(frame, path, title, source=''):
    """Write a DataFrame to `path` as a styled workbook with a title and source row."""
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = title[:31]

    header_font = Font(name='Calibri', bold=True, size=11, color='FFFFFF')
    header_fill = PatternFill(start_color=HEADER_COLOR, end_color=HEADER_COLOR, fill_type='solid')
    header_alignment = Alignment(horizontal='center', vertical='center', wrap_text=True)
    thin_border = Border(
        left=Side(style='thin'),
        right=Side(style='thin'),
        top=Side(style='thin'),
        bottom=Side(style='thin')
    )
    ncols = max(1, len(frame.columns))
    last = get_column_letter(ncols)

    ws.merge_cells(f'A1:{last}1')
    ws['A1'].value = title
    ws['A1'].font = Font(name='Calibri', bold=True, size=14, color=HEADER_COLOR)
    ws['A1'].alignment = Alignment(horizontal='center', vertical='center')

    ws.merge_cells(f'A2:{last}2')
    ws['A2'].value = f'Source: {source}' if source else ''
    ws['A2'].font = Font(name='Calibri', italic=True, size=10, color='666666')
    ws['A2'].alignment = Alignment(horizontal='center')

    for col, header in enumerate(frame.columns, 1):
        cell = ws.cell(row=4, column=col, value=str(header))
        cell.font = header_font
        cell.fill = header_fill
        cell.alignment = header_alignment
        cell.border = thin_border

    for i, record in enumerate(frame.itertuples(index=False)):
        row = i + 5
        for col, value in enumerate(record, 1):
            if hasattr(value, 'item'):
                value = value.item()
            cell = ws.cell(row=row, column=col, value=value)
            cell.border = thin_border
            if isinstance(value, float):
                cell.number_format = _NUMBER_FORMAT

    for col, header in enumerate(frame.columns, 1):
        values = [str(header)] + [str(v) for v in frame.iloc[:, col - 1]]
        ws.column_dimensions[get_column_letter(col)].width = min(60, max(8, max(len(v) for v in values) + 2))

    wb.save(path)
    logger.info('exported %d rows to %s', len(frame), path)
    return path

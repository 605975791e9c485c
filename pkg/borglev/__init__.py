"""borglev: a desk-scale numerical lab for the Borg-Levinson inverse spectral problem"""

__author__ = 'borglev developers'
__email__ = ''
__version__ = '0.1'
__all__ = ['Borglev', 'mesh', 'norms', 'spectrum', 'resolvent', 'dnmap',
           'isozaki', 'experiments', 'input_output', 'exceptions']

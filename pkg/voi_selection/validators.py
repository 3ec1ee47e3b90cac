import math

from django.core.exceptions import ValidationError

from .streams import MAX_SEED

MAX_TREE_DEPTH = 4
MAX_TREE_BRANCHING = 8
MAX_ORACLE_ARMS = 3
MAX_ORACLE_BUDGET = 12


def parse_int_list(value):
    """
    Parses a comma-separated list of integers such as ``'200,400,800'``.
    """
    try:
        return tuple(int(part) for part in value.split(','))
    except ValueError:
        raise ValidationError('"%(value)s" is not a comma-separated list of integers',
                              code='invalid_list', params={'value': value})


def parse_name_list(value):
    return tuple(part.strip() for part in value.split(',') if part.strip())


def validate_arms(value):
    if value < 2:
        raise ValidationError('At least two arms are required, got %(value)s',
                              code='arms', params={'value': value})


def validate_positive(value, name):
    if value < 1:
        raise ValidationError('%(name)s must be a positive integer, got %(value)s',
                              code='positive', params={'name': name, 'value': value})


def validate_budgets(budgets):
    if not budgets:
        raise ValidationError('At least one budget is required', code='budgets')
    for budget in budgets:
        validate_positive(budget, 'Budget')
    if any(later <= earlier for earlier, later in zip(budgets, budgets[1:])):
        raise ValidationError('Budgets must be strictly increasing, got %(budgets)s',
                              code='budgets', params={'budgets': list(budgets)})


def validate_budget_covers_arms(budget, arms):
    if budget < arms:
        raise ValidationError('Budget %(budget)s cannot sample each of the %(arms)s arms once',
                              code='budget_too_small', params={'budget': budget, 'arms': arms})


def validate_cost(value):
    if not (math.isfinite(value) and value >= 0):
        raise ValidationError('Sample cost must be a nonnegative number, got %(value)s',
                              code='cost', params={'value': value})


def validate_seed(value):
    if not 0 <= value <= MAX_SEED:
        raise ValidationError('Seed must be an unsigned 64-bit integer, got %(value)s',
                              code='seed', params={'value': value})


def validate_tree_shape(depth, branching):
    if not 1 <= depth <= MAX_TREE_DEPTH:
        raise ValidationError('Tree depth must lie in [1, %(max)s], got %(value)s',
                              code='tree_depth', params={'max': MAX_TREE_DEPTH, 'value': depth})
    if not 1 <= branching <= MAX_TREE_BRANCHING:
        raise ValidationError('Tree branching must lie in [1, %(max)s], got %(value)s',
                              code='tree_branching', params={'max': MAX_TREE_BRANCHING, 'value': branching})


def validate_oracle_guard(arms, budget):
    if arms > MAX_ORACLE_ARMS or budget > MAX_ORACLE_BUDGET:
        raise ValidationError('Exact values are limited to %(max_arms)s arms and a budget of '
                              '%(max_budget)s, got %(arms)s arms and budget %(budget)s',
                              code='oracle_guard',
                              params={'max_arms': MAX_ORACLE_ARMS, 'max_budget': MAX_ORACLE_BUDGET,
                                      'arms': arms, 'budget': budget})
    if budget < 0:
        raise ValidationError('Budget must be nonnegative, got %(budget)s',
                              code='oracle_guard', params={'budget': budget})

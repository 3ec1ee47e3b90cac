from django.dispatch import Signal

# Sent with ``sender`` set to the experiment domain ('flat', 'tree' or
# 'episode') and ``rows`` holding the aggregated ResultRow list.
experiment_finished = Signal()

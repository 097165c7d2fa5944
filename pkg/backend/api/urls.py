from django.urls import path

from api.views import BlockViewSet


app_name = 'api'


urlpatterns = [
    path(
        'messages/<str:message_id>/blocks/',
        BlockViewSet.as_view({'get': 'list'}),
    ),
    path(
        'messages/<str:message_id>/blocks/<int:index>/',
        BlockViewSet.as_view({'get': 'retrieve', 'put': 'update'}),
    ),
]
